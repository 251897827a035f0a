#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "glfq/group.hpp"

namespace glfq {

const std::vector<std::string>& known_suites();

struct RunConfig {
  int n = 2;
  std::uint64_t q = 3;
  int m = 1;
  /// "all", a catalogue name, a catalogue index, or a path to an involution JSON file.
  std::string involution = "all";
  std::vector<std::string> suites;
  std::string out_dir;
  int max_degree = 3;
  std::uint64_t bound = kDefaultEnumerationBound;
  std::string format = "json";

  /// Throws Error on q even or not a prime power, m outside {1,2}, empty or
  /// unknown suites, unknown format.
  void validate() const;
  nlohmann::json to_json() const;
};

enum class ExitStatus : int { pass = 0, violation = 1, config_error = 2 };

struct RunResult {
  nlohmann::json report;  // config, suites, verdict, timing
  ExitStatus status = ExitStatus::pass;
};

/// Runs the selected suites in name order. Configuration and bound problems
/// give config_error with an "error" entry; a failing suite gives violation.
RunResult run(const RunConfig& config);

/// Report without the timing block, for comparisons across runs.
nlohmann::json deterministic_part(const nlohmann::json& report);

/// Human-readable forms of a report.
std::string report_text(const nlohmann::json& report);
std::string report_csv(const nlohmann::json& report);

/// Writes classes.csv, characters.csv and one theorem_a_<name>.json per
/// selected involution into config.out_dir. Returns the paths written.
std::vector<std::string> dump(const RunConfig& config);

}  // namespace glfq
