// End-to-end acceptance checks. One line per criterion; exit status 1 if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <unistd.h>

#include "glfq/inv.hpp"
#include "glfq/rep.hpp"
#include "glfq/tori.hpp"

using namespace glfq;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Criterion {
 public:
  void require(bool ok, const std::string& what) {
    ++checked_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ += !ok;
  }
  Outcome outcome(const std::string& summary) const {
    Outcome o{failed_ == 0, summary + " (" + std::to_string(checked_) + " checks"};
    if (failed_) {
      o.detail += ", " + std::to_string(failed_) + " failed:";
      for (const auto& f : failures_) o.detail += " [" + f + "]";
    }
    o.detail += ")";
    return o;
  }

 private:
  std::uint64_t checked_ = 0;
  std::uint64_t failed_ = 0;
  std::vector<std::string> failures_;
};

std::string text(const Rational& r) {
  return std::to_string(r.numerator()) + (r.denominator() == 1 ? "" : "/" + std::to_string(r.denominator()));
}

// Shared workspaces so tables are built once.
Workspace& field(std::uint64_t q, int m = 1) {
  static std::map<std::pair<std::uint64_t, int>, std::unique_ptr<Workspace>> cache;
  auto& slot = cache[{q, m}];
  if (!slot) slot = std::make_unique<Workspace>(q, m);
  return *slot;
}

std::string group_name(int n, std::uint64_t q, int m = 1) {
  return "GL_" + std::to_string(n) + "(F_" + std::to_string(m == 1 ? q : q * q) + ")";
}

struct SweepEntry {
  int n;
  std::uint64_t q;
  int m;
  std::vector<std::string> involutions;
};

const std::vector<SweepEntry>& sweep() {
  static const std::vector<SweepEntry> s = {
      {2, 3, 1, {"inner_diag_1", "inner_eform", "ti_symmetric", "ti_antisymmetric"}},
      {2, 5, 1, {"inner_diag_1", "inner_eform", "ti_symmetric", "ti_antisymmetric"}},
      {3, 3, 1, {"inner_diag_1", "ti_symmetric"}},
      {2, 3, 2, {"frobenius", "frobenius_ti_hermitian"}},
  };
  return s;
}

std::vector<Involution> involutions_for(const SweepEntry& e) {
  auto g = field(e.q, e.m).group(e.n);
  const Matrix one = Matrix::identity(&g->field(), e.n);
  std::vector<Involution> out;
  for (const auto& name : e.involutions) {
    if (name == "frobenius") out.emplace_back(g, InvolutionKind::frobenius, one, name);
    else if (name == "frobenius_ti_hermitian")
      out.emplace_back(g, InvolutionKind::frobenius_transpose_inverse, one, name);
    else
      for (auto& s : builtin_involutions(g))
        if (s.name() == name) out.push_back(s);
  }
  if (out.size() != e.involutions.size()) throw Error("missing catalogue involution for " + group_name(e.n, e.q, e.m));
  return out;
}

Outcome theorem_a() {
  Criterion c;
  std::uint64_t rows = 0;
  for (const auto& e : sweep())
    for (const auto& s : involutions_for(e)) {
      const auto r = verify_theorem_A(field(e.q, e.m), s);
      rows += r["rows"].size();
      c.require(r["verdict"] == "pass" && r["violations"].empty(),
                group_name(e.n, e.q, e.m) + " " + s.name() + " violations " + r["violations"].dump());
    }
  return c.outcome("distinguished implies twisted-dual invariant, no violations over " + std::to_string(rows) + " irreducible/involution pairs");
}

Outcome cuspidal_counts() {
  Criterion c;
  const std::vector<std::tuple<int, std::uint64_t, std::uint64_t>> expected = {{1, 3, 2}, {2, 3, 3}, {2, 5, 10}, {3, 3, 8}};
  std::string values;
  for (auto [n, q, d] : expected) {
    const auto found = field(q).cuspidals(n).size();
    c.require(found == d && d_count(n, q) == d,
              group_name(n, q) + " found " + std::to_string(found) + " expected " + std::to_string(d));
    values += " " + std::to_string(found);
  }
  return c.outcome("cuspidal counts" + values);
}

Outcome table_integrity() {
  Criterion c;
  const auto dir = std::filesystem::temp_directory_path() / ("glfq_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::set<std::tuple<int, std::uint64_t, int>> groups;
  for (const auto& e : sweep()) groups.insert({e.n, e.q, e.m});
  for (auto [n, q, m] : groups) {
    auto& ws = field(q, m);
    auto t = ws.characters(n);
    const auto& s = t->structure();
    const std::string name = group_name(n, q, m);
    c.require(t->size() == s.class_count(), name + " irreducible count");
    std::int64_t squares = 0;
    for (auto d : t->degrees()) squares += d * d;
    c.require(squares == static_cast<std::int64_t>(s.order()), name + " sum of squared degrees");
    const auto problems = t->verify();
    c.require(problems.empty(), name + " orthogonality: " + problems);
    const auto path = dir / (name + ".csv");
    std::ofstream(path, std::ios::binary) << t->to_csv();
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    const auto back = CharacterTable::from_csv(t->structure_ptr(), text.str());
    c.require(back.verify().empty() && back.size() == t->size(), name + " dumped table");
  }
  std::filesystem::remove_all(dir);
  return c.outcome("character tables: orthogonality, counts, degrees, dumped round trip");
}

Outcome mackey() {
  Criterion c;
  std::uint64_t identities = 0;
  for (int n : {2, 3}) {
    auto& ws = field(3);
    auto g = ws.group(n);
    for (const auto& s : builtin_involutions(g)) {
      const auto h = fixed_subgroup(s);
      for (const auto& f : compositions(n)) {
        MackeyCheck check(ws, f, h);
        auto lt = ws.levi_characters(f);
        for (std::size_t i = 0; i < lt->size(); ++i) {
          const auto r = check.evaluate((*lt)[i]);
          ++identities;
          c.require(r.equal && r.witness, group_name(n, 3) + " " + s.name() + " " + f.to_string() + " levi char " +
                                              std::to_string(i) + " lhs " + text(r.lhs) + " rhs " + text(r.rhs));
        }
      }
    }
  }
  return c.outcome("Mackey identity: " + std::to_string(identities) + " exact equalities with witnesses");
}

Outcome whittaker() {
  Criterion c;
  for (std::uint64_t q : {3, 5}) {
    auto& ws = field(q);
    const Field& f = ws.group(1)->field();
    for (auto rho : ws.cuspidals(1))
      for (int k : {2, 3}) {
        if (k == 3 && q != 3) continue;
        const auto ind = induce_support(ws, CuspidalSupport(k, CuspidalFactor{1, rho}));
        for (FieldCode a = 1; a < f.order(); ++a)
          c.require(whittaker_dim(ws, ind, a) == 1, "q=" + std::to_string(q) + " rho " + std::to_string(rho) +
                                                        " k=" + std::to_string(k) + " a=" + std::to_string(a));
      }
  }
  auto& ws = field(3);
  const Field& f = ws.group(2)->field();
  for (auto rho : ws.cuspidals(2)) {
    const auto ind = induce_support(ws, CuspidalSupport{CuspidalFactor{2, rho}});
    for (FieldCode a = 1; a < f.order(); ++a)
      c.require(whittaker_dim(ws, ind, a) == 1, "GL_2(F_3) cuspidal " + std::to_string(rho));
  }
  return c.outcome("Whittaker dimension 1 for every multiplier");
}

Outcome psh() {
  Criterion c;
  const auto r = psh_verify(field(3), 3);
  for (const auto& check : r["checks"])
    c.require(check.value("status", std::string()) == "pass", check.value("name", std::string("?")));
  c.require(r["verdict"] == "pass", "overall verdict");
  return c.outcome("PSH axioms through degree 3 at q=3");
}

Outcome zelevinsky() {
  Criterion c;
  for (int n : {2, 3}) {
    const auto scan = support_scan(field(3), n);
    for (std::size_t i = 0; i < scan.size(); ++i)
      c.require(scan[i].size() == 1, group_name(n, 3) + " irreducible " + std::to_string(i) + " has " +
                                         std::to_string(scan[i].size()) + " supports");
  }
  return c.outcome("unique cuspidal support on GL_2(F_3) and GL_3(F_3)");
}

Outcome geometric_lemma() {
  Criterion c;
  std::uint64_t cosets = 0;
  for (int n : {2, 3}) {
    auto& ws = field(3);
    auto g = ws.group(n);
    for (const auto& s : builtin_involutions(g)) {
      const auto h = fixed_subgroup(s);
      for (const auto& f : compositions(n)) {
        auto labels = f.labeling();
        for (auto& v : labels) ++v;
        std::uint64_t covered = 0;
        const std::string where = group_name(n, 3) + " " + s.name() + " " + f.to_string();
        for (const auto& rep : geometric_representatives(ws, f, s, h)) {
          ++cosets;
          covered += rep.coset_size;
          c.require(rep.ok(), where + " coset of " + std::to_string(rep.coset_representative));
          if (!rep.ok()) continue;
          const auto check = verify_twisted_levi(twisted_levi(labels, rep.pattern), rep.pattern, s, rep.q);
          c.require(check.ok(), where + " twisted levi at x=" + std::to_string(rep.x));
        }
        c.require(covered == g->order(), where + " cosets do not cover G");
      }
    }
  }
  return c.outcome("geometric lemma over " + std::to_string(cosets) + " double cosets");
}

Outcome tori() {
  Criterion c;
  for (auto [n, q] : std::vector<std::pair<int, std::uint64_t>>{{1, 3}, {2, 3}, {2, 5}, {3, 3}})
    c.require(anisotropic_gp_count(n, q) == d_count(n, q), "general position count " + group_name(n, q));
  for (std::uint64_t q : {3, 5}) {
    const auto r = split_conjugacy_report(2, q);
    c.require(r["verdict"] == "pass", "split conjugacy q=" + std::to_string(q) + " " + r["mismatches"].dump());
  }
  for (int n = 1; n <= 3; ++n)
    c.require(scalars_bijection(n, 3, 2)["verdict"] == "pass", "scalars bijection n=" + std::to_string(n));
  return c.outcome("torus counts, split conjugacy and restriction of scalars");
}

Outcome transpose_sanity() {
  Criterion c;
  for (auto [n, q] : std::vector<std::pair<int, std::uint64_t>>{{2, 3}, {2, 5}, {3, 3}}) {
    auto& ws = field(q);
    auto g = ws.group(n);
    auto t = ws.characters(n);
    const Involution ti(g, InvolutionKind::transpose_inverse, Matrix::identity(&g->field(), n), "ti_symmetric");
    for (std::size_t i = 0; i < t->size(); ++i)
      c.require(twisted_dual((*t)[i], ti) == (*t)[i], group_name(n, q) + " irreducible " + std::to_string(i));
    const auto& s = t->structure();
    for (std::int32_t x = 0; x < static_cast<std::int32_t>(g->order()); ++x)
      c.require(s.class_of[x] == s.class_of[g->index_of(g->element(x).transpose())],
                group_name(n, q) + " element " + std::to_string(x));
  }
  return c.outcome("transpose-inverse fixes every irreducible; g and its transpose are conjugate");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"distinction sweep", theorem_a},
      {"cuspidal counting", cuspidal_counts},
      {"character table integrity", table_integrity},
      {"Mackey identity", mackey},
      {"Whittaker uniqueness", whittaker},
      {"PSH axioms", psh},
      {"Zelevinsky support", zelevinsky},
      {"geometric lemma", geometric_lemma},
      {"torus combinatorics", tori},
      {"transpose-type sanity", transpose_sanity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << i + 1 << ": " << criteria[i].first << " - "
         << o.detail << " [" << secs << " s]";
    std::cout << line.str() << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
