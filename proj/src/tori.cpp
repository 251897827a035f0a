#include "glfq/tori.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "glfq/ff.hpp"
#include "glfq/rep.hpp"

namespace glfq {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

std::uint64_t checked_pow(std::uint64_t q, int e) {
  unsigned __int128 v = 1;
  for (int i = 0; i < e; ++i) {
    v *= q;
    if (v > kMaxModulus) throw Error("torus level too large: q^" + std::to_string(e));
  }
  return static_cast<std::uint64_t>(v);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  for (; e; e >>= 1, b = mulmod(b, b, m))
    if (e & 1) r = mulmod(r, b, m);
  return r;
}

void partitions_into(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_into(n - p, p, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_into(n, n, cur, out);
  return out;
}

void require_torus(const TorusDatum& t) {
  if (t.parts.empty()) throw Error("torus needs at least one part");
  if (t.q < 2) throw Error("torus base field order must be at least 2");
  for (std::size_t i = 0; i < t.parts.size(); ++i) {
    if (t.parts[i] < 1) throw Error("torus parts must be positive");
    if (i && t.parts[i] > t.parts[i - 1]) throw Error("torus parts must be non-increasing");
  }
}

}  // namespace

int TorusDatum::rank() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::vector<std::uint64_t> TorusDatum::part_orders() const {
  std::vector<std::uint64_t> out;
  for (int p : parts) out.push_back(checked_pow(q, p) - 1);
  return out;
}

std::uint64_t TorusDatum::point_count() const {
  unsigned __int128 v = 1;
  for (auto o : part_orders()) {
    v *= o;
    if (v > kMaxModulus) throw Error("torus point count overflow");
  }
  return static_cast<std::uint64_t>(v);
}

std::string TorusDatum::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
  return s + ")";
}

void TorusCharacter::validate() const {
  require_torus(torus);
  const auto orders = torus.part_orders();
  if (exponents.size() != orders.size()) throw Error("torus character needs one exponent per part");
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (exponents[i] >= orders[i]) throw Error("torus character exponent not reduced");
}

bool TorusCharacter::is_trivial() const {
  return std::all_of(exponents.begin(), exponents.end(), [](std::uint64_t e) { return e == 0; });
}

std::vector<TorusDatum> list_tori(int n, std::uint64_t q) {
  if (n < 1) throw Error("list_tori: n must be positive");
  std::vector<TorusDatum> out;
  for (auto& p : partitions(n)) out.push_back({p, q});
  return out;
}

std::vector<TorusCharacter> all_characters(const TorusDatum& t) {
  require_torus(t);
  const auto orders = t.part_orders();
  std::vector<TorusCharacter> out;
  std::vector<std::uint64_t> e(orders.size(), 0);
  while (true) {
    out.push_back({t, e});
    std::size_t i = e.size();
    while (i > 0) {
      --i;
      if (++e[i] < orders[i]) break;
      e[i] = 0;
      if (i == 0) return out;
    }
  }
}

TorusCharacter norm_pullback(const TorusCharacter& theta, int extension) {
  theta.validate();
  if (extension < 1) throw Error("norm_pullback: extension degree must be positive");
  TorusCharacter out;
  out.torus = {theta.torus.parts, checked_pow(theta.torus.q, extension)};
  const auto small = theta.torus.part_orders();
  const auto big = out.torus.part_orders();
  for (std::size_t i = 0; i < small.size(); ++i)
    out.exponents.push_back(mulmod(theta.exponents[i], big[i] / small[i], big[i]));
  return out;
}

std::vector<std::uint64_t> split_exponents(const TorusCharacter& theta, int level) {
  theta.validate();
  const std::uint64_t q = theta.torus.q;
  const std::uint64_t modulus = checked_pow(q, level) - 1;
  std::vector<std::uint64_t> out;
  const auto orders = theta.torus.part_orders();
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const int part = theta.torus.parts[i];
    if (level % part) throw Error("split level " + std::to_string(level) + " not divisible by part " + std::to_string(part));
    const std::uint64_t base = mulmod(theta.exponents[i], modulus / orders[i], modulus);
    for (int j = 0; j < part; ++j) out.push_back(mulmod(base, powmod(q, j, modulus), modulus));
  }
  return out;
}

int common_split_level(const TorusDatum& a, const TorusDatum& b) {
  int l = 1;
  for (int p : a.parts) l = std::lcm(l, p);
  for (int p : b.parts) l = std::lcm(l, p);
  return l;
}

bool geometrically_conjugate(const TorusCharacter& a, const TorusCharacter& b, int max_level) {
  a.validate();
  b.validate();
  if (a.torus.q != b.torus.q || a.torus.rank() != b.torus.rank())
    throw Error("geometrically_conjugate: tori of different groups");
  const int base = common_split_level(a.torus, b.torus);
  if (max_level < base)
    throw Error("geometrically_conjugate: max level " + std::to_string(max_level) + " below split level " +
                std::to_string(base));
  int verdict = -1;
  for (int level = base; level <= max_level; level += base) {
    auto x = split_exponents(a, level), y = split_exponents(b, level);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const int v = x == y ? 1 : 0;
    if (verdict >= 0 && v != verdict) throw Error("geometric conjugacy depends on the split level (defect)");
    verdict = v;
  }
  return verdict == 1;
}

bool in_general_position(const TorusCharacter& theta) {
  theta.validate();
  const auto& parts = theta.torus.parts;
  const auto orders = theta.torus.part_orders();
  const std::uint64_t q = theta.torus.q;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int j = 1; j < parts[i]; ++j)
      if (mulmod(theta.exponents[i], powmod(q, j, orders[i]), orders[i]) == theta.exponents[i]) return false;
    for (std::size_t k = i + 1; k < parts.size(); ++k) {
      if (parts[k] != parts[i]) continue;
      for (int j = 0; j < parts[i]; ++j)
        if (mulmod(theta.exponents[k], powmod(q, j, orders[i]), orders[i]) == theta.exponents[i]) return false;
    }
  }
  return true;
}

std::uint64_t anisotropic_gp_count(int n, std::uint64_t q) {
  const TorusDatum t{{n}, q};
  const std::uint64_t order = t.part_orders()[0];
  std::vector<char> seen(order, 0);
  std::uint64_t orbits = 0;
  for (std::uint64_t e = 0; e < order; ++e) {
    if (seen[e]) continue;
    std::uint64_t x = e, size = 0;
    do {
      seen[x] = 1;
      ++size;
      x = mulmod(x, q, order);
    } while (x != e);
    if (size == static_cast<std::uint64_t>(n)) ++orbits;
  }
  return orbits;
}

SplitTorusAction SplitTorusAction::identity(int n) {
  SplitTorusAction a;
  for (int i = 0; i < n; ++i) {
    a.perm.push_back(i);
    a.sign.push_back(1);
    a.frobenius.push_back(0);
  }
  return a;
}

SplitTorusAction SplitTorusAction::inversion(int n) {
  SplitTorusAction a = identity(n);
  std::fill(a.sign.begin(), a.sign.end(), -1);
  return a;
}

bool lusztig_condition(const TorusCharacter& theta, const SplitTorusAction& action, int level) {
  const auto e = split_exponents(theta, level);
  const std::size_t n = e.size();
  const std::uint64_t modulus = checked_pow(theta.torus.q, level) - 1;
  if (action.perm.size() != n || action.sign.size() != n || action.frobenius.size() != n)
    throw Error("torus action has the wrong size");
  auto scale = [&](std::size_t i) {
    const std::uint64_t f = powmod(theta.torus.q, static_cast<std::uint64_t>(action.frobenius[i]), modulus);
    if (action.sign[i] == 1) return f;
    if (action.sign[i] == -1) return (modulus - f) % modulus;
    throw Error("torus action signs must be +1 or -1");
  };
  for (std::size_t i = 0; i < n; ++i) {
    const int p = action.perm[i];
    if (p < 0 || static_cast<std::size_t>(p) >= n || action.perm[p] != static_cast<int>(i))
      throw Error("torus action is not an involution");
    if (mulmod(scale(i), scale(p), modulus) != 1 % modulus) throw Error("torus action is not an involution");
  }
  // theta~(sigma t) has coefficient e_i * scale(i) on coordinate perm[i].
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t lhs = mulmod(e[i], scale(i), modulus);
    const std::uint64_t rhs = (modulus - e[action.perm[i]]) % modulus;
    if (lhs != rhs) return false;
  }
  return true;
}

nlohmann::json split_conjugacy_report(int n, std::uint64_t q) {
  const TorusDatum anisotropic{{n}, q};
  const TorusDatum split{std::vector<int>(n, 1), q};
  std::set<std::vector<std::uint64_t>> split_classes;
  for (const auto& chi : all_characters(split)) {
    auto x = split_exponents(chi, n);
    std::sort(x.begin(), x.end());
    split_classes.insert(x);
  }
  const std::uint64_t order = anisotropic.part_orders()[0];
  std::uint64_t conjugate = 0, invariant = 0;
  nlohmann::json mismatches = nlohmann::json::array();
  for (const auto& chi : all_characters(anisotropic)) {
    auto x = split_exponents(chi, n);
    std::sort(x.begin(), x.end());
    const bool conj = split_classes.count(x) > 0;
    const bool fr = mulmod(chi.exponents[0], q, order) == chi.exponents[0];
    conjugate += conj;
    invariant += fr;
    if (conj != fr) mismatches.push_back(chi.exponents[0]);
  }
  return {{"n", n},
          {"q", q},
          {"anisotropic_characters", order},
          {"conjugate_to_split", conjugate},
          {"fr_invariant", invariant},
          {"mismatches", mismatches},
          {"verdict", mismatches.empty() ? "pass" : "fail"}};
}

nlohmann::json scalars_bijection(int n, std::uint64_t q, int m) {
  if (m < 1) throw Error("scalars_bijection: m must be positive");
  const std::uint64_t big_q = checked_pow(q, m);
  auto left = list_tori(n, big_q);
  std::vector<TorusDatum> right;
  for (auto& t : list_tori(n * m, q))
    if (std::all_of(t.parts.begin(), t.parts.end(), [m](int p) { return p % m == 0; })) right.push_back(t);

  nlohmann::json pairs = nlohmann::json::array();
  std::vector<char> used(right.size(), 0);
  bool all_matched = left.size() == right.size();
  for (const auto& t : left) {
    std::vector<int> scaled;
    for (int p : t.parts) scaled.push_back(p * m);
    auto orders = t.part_orders();
    std::sort(orders.begin(), orders.end());
    int match = -1;
    for (std::size_t k = 0; k < right.size(); ++k) {
      if (used[k] || right[k].parts != scaled) continue;
      auto other = right[k].part_orders();
      std::sort(other.begin(), other.end());
      if (other == orders && right[k].point_count() == t.point_count()) {
        match = static_cast<int>(k);
        break;
      }
    }
    nlohmann::json row = {{"partition", t.parts}, {"points", t.point_count()}, {"character_group", t.part_orders()}};
    if (match >= 0) {
      used[match] = 1;
      row["restricted_partition"] = right[match].parts;
      row["restricted_points"] = right[match].point_count();
      row["restricted_character_group"] = right[match].part_orders();
    } else {
      all_matched = false;
    }
    row["matched"] = match >= 0;
    pairs.push_back(row);
  }
  all_matched = all_matched && std::all_of(used.begin(), used.end(), [](char u) { return u != 0; });
  return {{"n", n},
          {"q", q},
          {"m", m},
          {"tori", left.size()},
          {"restricted_tori", right.size()},
          {"pairs", pairs},
          {"verdict", all_matched ? "pass" : "fail"}};
}

nlohmann::json tori_report(int n, std::uint64_t q, int m) {
  const std::uint64_t big_q = checked_pow(q, m);
  nlohmann::json tori = nlohmann::json::array();
  for (const auto& t : list_tori(n, big_q))
    tori.push_back({{"partition", t.parts}, {"points", t.point_count()}});
  const auto gp = anisotropic_gp_count(n, big_q);
  const auto d = d_count(n, big_q);
  nlohmann::json report = {{"tori", tori}, {"anisotropic_gp_count", gp}, {"d_count", d}};
  report["split_conjugacy"] = split_conjugacy_report(n, big_q);
  bool pass = gp == d && report["split_conjugacy"]["verdict"] == "pass";
  if (m == 2) {
    report["scalars_bijection"] = scalars_bijection(n, q, m);
    pass = pass && report["scalars_bijection"]["verdict"] == "pass";
  }
  report["verdict"] = pass ? "pass" : "fail";
  return report;
}

}  // namespace glfq
