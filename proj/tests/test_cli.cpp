#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "glfq/chartab.hpp"
#include "glfq/rep.hpp"
#include "glfq/runner.hpp"

using namespace glfq;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("glfq_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cli(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string(GLFQ_CLI) + " " + args + " > " + out.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

RunConfig config(int n, std::uint64_t q, std::vector<std::string> suites) {
  RunConfig c;
  c.n = n;
  c.q = q;
  c.suites = std::move(suites);
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(config(2, 3, {"theorem_a"}).validate());
  CHECK_THROWS_AS(config(2, 4, {"theorem_a"}).validate(), Error);
  CHECK_THROWS_AS(config(2, 6, {"theorem_a"}).validate(), Error);
  CHECK_THROWS_AS(config(2, 3, {}).validate(), Error);
  CHECK_THROWS_AS(config(2, 3, {"bogus"}).validate(), Error);
  auto c = config(2, 3, {"tori"});
  c.m = 3;
  CHECK_THROWS_AS(c.validate(), Error);
  c.m = 1;
  c.format = "xml";
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK(known_suites() == std::vector<std::string>{"cuspidal_count", "geometric_lemma", "mackey", "psh", "theorem_a",
                                                   "tori", "whittaker"});
}

TEST_CASE("run statuses") {
  auto r = run(config(2, 3, {"theorem_a"}));
  CHECK(r.status == ExitStatus::pass);
  CHECK(r.report["verdict"] == "pass");
  CHECK(r.report["suites"]["theorem_a"]["involutions"].size() == 4);

  r = run(config(2, 4, {"theorem_a"}));
  CHECK(r.status == ExitStatus::config_error);
  CHECK(r.report.contains("error"));

  r = run(config(1, 3, {"cuspidal_count"}));
  CHECK(r.status == ExitStatus::pass);
  CHECK(r.report["suites"]["cuspidal_count"]["cuspidals"] == 2);
  CHECK(r.report["suites"]["cuspidal_count"]["d_count"] == 2);

  auto big = config(3, 3, {"cuspidal_count"});
  big.bound = 1000;
  CHECK(run(big).status == ExitStatus::config_error);

  auto bad = config(2, 3, {"theorem_a"});
  bad.involution = "no_such_involution";
  CHECK(run(bad).status == ExitStatus::config_error);
  bad.involution = "7";
  CHECK(run(bad).status == ExitStatus::config_error);
}

TEST_CASE("suites run in name order and are deterministic") {
  auto c = config(2, 3, {"tori", "whittaker", "cuspidal_count", "mackey", "geometric_lemma"});
  c.involution = "inner_diag_1";
  const auto a = run(c);
  const auto b = run(c);
  CHECK(a.status == ExitStatus::pass);
  std::vector<std::string> names;
  for (const auto& [name, _] : a.report["suites"].items()) names.push_back(name);
  CHECK(names == std::vector<std::string>{"cuspidal_count", "geometric_lemma", "mackey", "tori", "whittaker"});
  CHECK(a.report.contains("timing"));
  CHECK_FALSE(deterministic_part(a.report).contains("timing"));
  CHECK(deterministic_part(a.report) == deterministic_part(b.report));
  CHECK(report_csv(a.report).rfind("suite,verdict\n", 0) == 0);
  CHECK(report_text(a.report).find("verdict: pass") != std::string::npos);
}

TEST_CASE("involution from a file") {
  TempDir dir("inv");
  const fs::path file = dir.path / "sigma.json";
  std::ofstream(file) << R"({"kind": "transpose_inverse", "matrix": [[1, 0], [0, 1]], "name": "orthogonal"})";
  auto c = config(2, 3, {"theorem_a"});
  c.involution = file.string();
  const auto r = run(c);
  CHECK(r.status == ExitStatus::pass);
  CHECK(r.report["suites"]["theorem_a"]["involutions"][0]["involution"]["name"] == "orthogonal");
  std::ofstream(file) << "not json";
  CHECK(run(c).status == ExitStatus::config_error);
}

TEST_CASE("dump is byte-identical and re-verifies") {
  TempDir a("dump_a"), b("dump_b");
  auto c = config(2, 3, {});
  c.out_dir = a.path.string();
  const auto paths = dump(c);
  CHECK(paths.size() == 2 + 4);
  c.out_dir = b.path.string();
  dump(c);
  for (const auto& p : paths) {
    const auto name = fs::path(p).filename();
    REQUIRE(slurp(a.path / name) == slurp(b.path / name));
  }
  Workspace ws(3);
  const auto back = CharacterTable::from_csv(ws.characters(2)->structure_ptr(), slurp(a.path / "characters.csv"));
  CHECK(back.size() == 8);
  CHECK(back.verify().empty());
  const auto report = nlohmann::json::parse(slurp(a.path / "theorem_a_ti_symmetric.json"));
  CHECK(report["verdict"] == "pass");

  TempDir one("dump_one");
  c = config(1, 3, {});
  c.out_dir = one.path.string();
  dump(c);
  const auto csv = slurp(one.path / "characters.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header and two rows
  c.out_dir.clear();
  CHECK_THROWS_AS(dump(c), Error);
}

TEST_CASE("command line exit statuses") {
  TempDir dir("cli");
  const fs::path log = dir.path / "log.txt";
  CHECK(cli("run --n 2 --q 3 --suite theorem_a", log) == 0);
  CHECK(nlohmann::json::parse(slurp(log))["verdict"] == "pass");
  CHECK(cli("run --n 2 --q 4 --suite theorem_a", log) == 2);
  CHECK(cli("run --n 1 --q 3 --suite cuspidal_count --format text", log) == 0);
  CHECK(slurp(log).find("cuspidal_count: pass") != std::string::npos);
  CHECK(cli("run --n 2 --q 3 --suite nothing", log) == 2);
  CHECK(cli("run --n 2 --q 3", log) == 2);
  CHECK(cli("--bogus", log) == 2);
  CHECK(cli("run --n 2 --q 3 --suite cuspidal_count,tori --format csv --out " + (dir.path / "r").string(), log) == 0);
  CHECK(fs::exists(dir.path / "r" / "report.json"));
  CHECK(cli("dump --n 2 --q 3 --out " + (dir.path / "d").string(), log) == 0);
  CHECK(fs::exists(dir.path / "d" / "classes.csv"));
  CHECK(cli("dump --n 2 --q 3 --bound 10 --out " + (dir.path / "e").string(), log) == 2);
}
