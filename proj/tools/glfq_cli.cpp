// glfq: verification runner for GL_n over small odd finite fields.
//
//   glfq run  --n 2 --q 3 --suite theorem_a,mackey [--involution all|name|index|file] [--out dir]
//   glfq dump --n 2 --q 3 --out dir
//
// Exit status: 0 all suites pass, 1 a violation was found, 2 configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "glfq/ff.hpp"
#include "glfq/runner.hpp"

namespace {

void add_group_options(CLI::App* cmd, glfq::RunConfig& c) {
  cmd->add_option("--n", c.n, "matrix size")->capture_default_str();
  cmd->add_option("--q", c.q, "base field order (odd prime power)")->capture_default_str();
  cmd->add_option("--m", c.m, "element field is F_{q^m}, m in {1,2}")->capture_default_str();
  cmd->add_option("--involution", c.involution, "all, catalogue name or index, or a JSON file")->capture_default_str();
  cmd->add_option("--bound", c.bound, "enumeration bound on |G|")->capture_default_str();
  cmd->add_option("--out", c.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact representation-theory checks for GL_n(F_q)"};
  app.require_subcommand(1);
  glfq::RunConfig config;

  auto* run_cmd = app.add_subcommand("run", "run verification suites and print a report");
  add_group_options(run_cmd, config);
  run_cmd->add_option("--suite", config.suites, "suites (comma separated)")->delimiter(',')->required();
  run_cmd->add_option("--max-degree", config.max_degree, "PSH total degree")->capture_default_str();
  run_cmd->add_option("--format", config.format, "json, csv or text")->capture_default_str();

  auto* dump_cmd = app.add_subcommand("dump", "write class table, character table and per-involution distinction reports");
  add_group_options(dump_cmd, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*dump_cmd) {
    try {
      for (const auto& path : glfq::dump(config)) std::cout << path << "\n";
    } catch (const glfq::Error& e) {
      std::cerr << "glfq: " << e.what() << "\n";
      return 2;
    }
    return 0;
  }

  const glfq::RunResult result = glfq::run(config);
  std::string text;
  if (config.format == "text") text = glfq::report_text(result.report);
  else if (config.format == "csv") text = glfq::report_csv(result.report);
  else text = result.report.dump(2) + "\n";
  std::cout << text;
  if (result.report.contains("error")) std::cerr << "glfq: " << result.report["error"].get<std::string>() << "\n";

  if (!config.out_dir.empty() && result.status != glfq::ExitStatus::config_error) {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    std::ofstream out(std::filesystem::path(config.out_dir) / "report.json");
    if (ec || !out) {
      std::cerr << "glfq: cannot write report to " << config.out_dir << "\n";
      return 2;
    }
    out << result.report.dump(2) << "\n";
  }
  return static_cast<int>(result.status);
}
