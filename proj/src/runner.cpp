#include "glfq/runner.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "glfq/inv.hpp"
#include "glfq/rep.hpp"
#include "glfq/tori.hpp"

namespace glfq {

using nlohmann::json;

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> suites = {"cuspidal_count", "geometric_lemma", "mackey", "psh",
                                                  "theorem_a",      "tori",            "whittaker"};
  return suites;
}

void RunConfig::validate() const {
  GroupSpec{n, q, m}.validate();
  if (suites.empty()) throw Error("no suite selected");
  for (const auto& s : suites)
    if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
      throw Error("unknown suite '" + s + "'");
  if (format != "json" && format != "csv" && format != "text") throw Error("unknown format '" + format + "'");
  if (max_degree < 1) throw Error("max-degree must be positive");
  if (involution.empty()) throw Error("empty involution selection");
}

json RunConfig::to_json() const {
  return {{"n", n},           {"q", q},
          {"m", m},           {"involution", involution},
          {"suites", suites}, {"max_degree", max_degree},
          {"bound", bound}};
}

namespace {

std::vector<Involution> select_involutions(const RunConfig& config, GroupPtr group) {
  if (config.involution == "all") return builtin_involutions(group);
  auto catalogue = builtin_involutions(group);
  for (auto& s : catalogue)
    if (s.name() == config.involution) return {s};
  const bool numeric = std::all_of(config.involution.begin(), config.involution.end(),
                                   [](char c) { return c >= '0' && c <= '9'; });
  if (numeric) {
    const auto k = std::stoul(config.involution);
    if (k >= catalogue.size()) throw Error("involution index " + config.involution + " outside the catalogue");
    return {catalogue[k]};
  }
  std::ifstream in(config.involution);
  if (!in) throw Error("involution '" + config.involution + "' is neither a catalogue entry nor a readable file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("cannot parse involution file: " + std::string(e.what()));
  }
  return {involution_from_json(std::move(group), j)};
}

json suite_theorem_a(Workspace& ws, const std::vector<Involution>& involutions) {
  json runs = json::array();
  bool pass = true;
  for (const auto& s : involutions) {
    json r = verify_theorem_A(ws, s);
    r["involution"]["name"] = s.name();
    pass = pass && r["verdict"] == "pass";
    runs.push_back(std::move(r));
  }
  return {{"involutions", runs}, {"verdict", pass ? "pass" : "fail"}};
}

json suite_mackey(Workspace& ws, int n, const std::vector<Involution>& involutions) {
  json runs = json::array();
  bool pass = true;
  for (const auto& s : involutions) {
    const SubgroupData h = fixed_subgroup(s);
    json per_f = json::array();
    for (const auto& f : compositions(n)) {
      MackeyCheck check(ws, f, h);
      auto table = ws.levi_characters(f);
      json failures = json::array();
      for (std::size_t i = 0; i < table->size(); ++i) {
        const MackeyResult r = check.evaluate((*table)[i]);
        if (!r.equal || !r.witness) {
          std::ostringstream lhs, rhs;
          lhs << r.lhs;
          rhs << r.rhs;
          failures.push_back({{"levi_char", i}, {"lhs", lhs.str()}, {"rhs", rhs.str()}, {"witness", r.witness}});
        }
      }
      pass = pass && failures.empty();
      per_f.push_back({{"composition", f.parts},
                       {"double_cosets", check.coset_count()},
                       {"levi_characters", table->size()},
                       {"failures", failures}});
    }
    runs.push_back({{"involution", s.name()}, {"H_order", h.order()}, {"compositions", per_f}});
  }
  return {{"involutions", runs}, {"verdict", pass ? "pass" : "fail"}};
}

json suite_cuspidal_count(Workspace& ws, int n) {
  const auto found = ws.cuspidals(n).size();
  const auto expected = d_count(n, ws.spec(n).element_field_order());
  return {{"n", n}, {"cuspidals", found}, {"d_count", expected}, {"verdict", found == expected ? "pass" : "fail"}};
}

json suite_whittaker(Workspace& ws, int n) {
  const Field& f = ws.group(n)->field();
  json inductions = json::array();
  bool pass = true;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    for (auto rho : ws.cuspidals(d)) {
      const CuspidalSupport support(n / d, CuspidalFactor{d, rho});
      const ClassFunction induced = induce_support(ws, support);
      json dims = json::array();
      bool ok = true;
      for (std::uint32_t a = 1; a < f.order(); ++a) {
        const auto w = whittaker_dim(ws, induced, static_cast<FieldCode>(a));
        dims.push_back(w);
        ok = ok && w == 1;
      }
      pass = pass && ok;
      inductions.push_back({{"support", to_string(support)}, {"dims", dims}, {"status", ok ? "pass" : "fail"}});
    }
  }
  // Each irreducible has a Whittaker model of dimension at most one, the same for every multiplier.
  auto table = ws.characters(n);
  json irreducible_failures = json::array();
  std::uint64_t generic = 0;
  for (std::size_t i = 0; i < table->size(); ++i) {
    const auto w1 = whittaker_dim(ws, (*table)[i], f.one());
    bool ok = w1 == 0 || w1 == 1;
    for (std::uint32_t a = 2; a < f.order() && ok; ++a) ok = whittaker_dim(ws, (*table)[i], static_cast<FieldCode>(a)) == w1;
    generic += w1 == 1;
    if (!ok) irreducible_failures.push_back(i);
  }
  pass = pass && irreducible_failures.empty();
  return {{"inductions", inductions},
          {"generic_irreducibles", generic},
          {"irreducible_failures", irreducible_failures},
          {"verdict", pass ? "pass" : "fail"}};
}

json suite_geometric_lemma(Workspace& ws, int n, const std::vector<Involution>& involutions) {
  json runs = json::array();
  bool pass = true;
  for (const auto& s : involutions) {
    const SubgroupData h = fixed_subgroup(s);
    json per_f = json::array();
    for (const auto& f : compositions(n)) {
      auto labels = f.labeling();
      for (auto& v : labels) ++v;
      json cosets = json::array();
      for (const auto& rep : geometric_representatives(ws, f, s, h)) {
        json row = {{"coset_representative", rep.coset_representative},
                    {"coset_size", rep.coset_size},
                    {"x", rep.x},
                    {"sigma_q_inverse", rep.sigma_q_inverse},
                    {"twisted_square_identity", rep.twisted_square_identity},
                    {"fixed_group_matches", rep.fixed_group_matches}};
        bool ok = rep.ok();
        if (rep.x >= 0) {
          row["q"] = rep.q.to_string();
          row["pattern"] = rep.pattern;
          const TwistedLevi t = twisted_levi(labels, rep.pattern);
          const TwistedLeviCheck c = verify_twisted_levi(t, rep.pattern, s, rep.q);
          row["twisted_levi"] = {{"refined", t.refined.parts},
                                 {"pattern_matches", c.pattern_matches},
                                 {"preserved", c.preserved},
                                 {"pairing", c.pairing},
                                 {"maximal", c.maximal}};
          ok = ok && c.ok();
        }
        row["status"] = ok ? "pass" : "fail";
        pass = pass && ok;
        cosets.push_back(std::move(row));
      }
      per_f.push_back({{"composition", f.parts}, {"cosets", cosets}});
    }
    runs.push_back({{"involution", s.name()}, {"compositions", per_f}});
  }
  return {{"involutions", runs}, {"verdict", pass ? "pass" : "fail"}};
}

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult result;
  json& report = result.report;
  report["config"] = config.to_json();
  report["suites"] = json::object();
  report["timing"] = json::object();
  try {
    config.validate();
  } catch (const Error& e) {
    report["error"] = e.what();
    report["verdict"] = "error";
    result.status = ExitStatus::config_error;
    return result;
  }

  auto suites = config.suites;
  std::sort(suites.begin(), suites.end());
  suites.erase(std::unique(suites.begin(), suites.end()), suites.end());

  Workspace ws(config.q, config.m, config.bound);
  const int n = config.n;
  std::vector<Involution> involutions;
  const bool needs_involutions = std::any_of(suites.begin(), suites.end(), [](const std::string& s) {
    return s == "theorem_a" || s == "mackey" || s == "geometric_lemma";
  });
  try {
    if (needs_involutions) involutions = select_involutions(config, ws.group(n));
  } catch (const Error& e) {
    report["error"] = e.what();
    report["verdict"] = "error";
    result.status = ExitStatus::config_error;
    return result;
  }

  bool pass = true;
  for (const auto& name : suites) {
    const auto start = std::chrono::steady_clock::now();
    json out;
    try {
      if (name == "theorem_a") out = suite_theorem_a(ws, involutions);
      else if (name == "mackey") out = suite_mackey(ws, n, involutions);
      else if (name == "cuspidal_count") out = suite_cuspidal_count(ws, n);
      else if (name == "whittaker") out = suite_whittaker(ws, n);
      else if (name == "psh") out = psh_verify(ws, config.max_degree);
      else if (name == "tori") out = tori_report(n, config.q, config.m);
      else if (name == "geometric_lemma") out = suite_geometric_lemma(ws, n, involutions);
    } catch (const BoundError& e) {
      report["error"] = e.what();
      report["verdict"] = "error";
      result.status = ExitStatus::config_error;
      return result;
    } catch (const Error& e) {
      out = {{"error", e.what()}, {"verdict", "fail"}};
    }
    report["timing"][name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    pass = pass && out["verdict"] == "pass";
    report["suites"][name] = std::move(out);
  }
  report["verdict"] = pass ? "pass" : "fail";
  result.status = pass ? ExitStatus::pass : ExitStatus::violation;
  return result;
}

json deterministic_part(const json& report) {
  json copy = report;
  copy.erase("timing");
  return copy;
}

std::string report_text(const json& report) {
  std::ostringstream os;
  const auto& c = report.at("config");
  os << "GL_" << c.at("n").get<int>() << "(F_" << c.at("q").get<std::uint64_t>();
  if (c.at("m").get<int>() == 2) os << "^2";
  os << ")\n";
  if (report.contains("error")) os << "error: " << report["error"].get<std::string>() << "\n";
  for (const auto& [name, suite] : report.at("suites").items()) {
    os << "  " << name << ": " << suite.value("verdict", std::string("?"));
    if (suite.contains("error")) os << " (" << suite["error"].get<std::string>() << ")";
    os << "\n";
  }
  os << "verdict: " << report.at("verdict").get<std::string>() << "\n";
  return os.str();
}

std::string report_csv(const json& report) {
  std::ostringstream os;
  os << "suite,verdict\n";
  for (const auto& [name, suite] : report.at("suites").items())
    os << name << "," << suite.value("verdict", std::string("?")) << "\n";
  os << "overall," << report.at("verdict").get<std::string>() << "\n";
  return os.str();
}

std::vector<std::string> dump(const RunConfig& config) {
  GroupSpec{config.n, config.q, config.m}.validate();
  if (config.out_dir.empty()) throw Error("dump needs an output directory");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw Error("cannot create " + config.out_dir + ": " + ec.message());

  Workspace ws(config.q, config.m, config.bound);
  const int n = config.n;
  std::vector<std::string> written;
  auto write = [&](const std::string& file, const std::string& content) {
    const std::string path = (fs::path(config.out_dir) / file).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("write failed for " + path);
    written.push_back(path);
  };
  write("classes.csv", ws.classes(n)->to_csv());
  write("characters.csv", ws.characters(n)->to_csv());
  for (const auto& s : select_involutions(config, ws.group(n))) {
    json r = verify_theorem_A(ws, s);
    r["involution"]["name"] = s.name();
    write("theorem_a_" + s.name() + ".json", r.dump(2) + "\n");
  }
  return written;
}

}  // namespace glfq
