#include "glfq/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace glfq {

// ---------------------------------------------------------------------------
// ClassFunction

ClassFunction::ClassFunction(ClassStructurePtr structure, std::vector<Cyclotomic> values)
    : structure_(std::move(structure)), values_(std::move(values)) {
  if (!structure_) throw Error("class function without class structure");
  if (values_.size() != structure_->class_count())
    throw Error("class function has " + std::to_string(values_.size()) + " values for " +
                std::to_string(structure_->class_count()) + " classes");
}

ClassFunction ClassFunction::constant(ClassStructurePtr structure, const Cyclotomic& value) {
  const std::size_t k = structure->class_count();
  return ClassFunction(std::move(structure), std::vector<Cyclotomic>(k, value));
}

bool ClassFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Cyclotomic& v) { return v.is_zero(); });
}

void ClassFunction::require_same(const ClassFunction& o) const {
  if (structure_ != o.structure_) throw Error("class functions live on different class structures");
}

ClassFunction ClassFunction::operator+(const ClassFunction& o) const {
  require_same(o);
  std::vector<Cyclotomic> v(values_.size());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = values_[c] + o.values_[c];
  return ClassFunction(structure_, std::move(v));
}

ClassFunction ClassFunction::operator-(const ClassFunction& o) const {
  require_same(o);
  std::vector<Cyclotomic> v(values_.size());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = values_[c] - o.values_[c];
  return ClassFunction(structure_, std::move(v));
}

ClassFunction ClassFunction::operator*(const ClassFunction& o) const {
  require_same(o);
  std::vector<Cyclotomic> v(values_.size());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = values_[c] * o.values_[c];
  return ClassFunction(structure_, std::move(v));
}

ClassFunction ClassFunction::scaled(const Cyclotomic& s) const {
  std::vector<Cyclotomic> v(values_.size());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = values_[c] * s;
  return ClassFunction(structure_, std::move(v));
}

ClassFunction ClassFunction::conj() const {
  std::vector<Cyclotomic> v(values_.size());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = values_[c].conj();
  return ClassFunction(structure_, std::move(v));
}

bool ClassFunction::operator==(const ClassFunction& o) const { return structure_ == o.structure_ && values_ == o.values_; }

Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) {
  if (a.structure_ptr() != b.structure_ptr()) throw Error("inner product of class functions on different structures");
  const ClassStructure& s = a.structure();
  Cyclotomic acc;
  for (std::size_t c = 0; c < s.class_count(); ++c) {
    if (a[c].is_zero() || b[c].is_zero()) continue;
    acc += (a[c] * b[c].conj()) * Cyclotomic(static_cast<std::int64_t>(s.sizes[c]));
  }
  return acc / Rational(static_cast<std::int64_t>(s.order()));
}

// ---------------------------------------------------------------------------
// CharacterTable

CharacterTable::CharacterTable(ClassStructurePtr structure, std::vector<ClassFunction> irreducibles)
    : structure_(std::move(structure)), irreducibles_(std::move(irreducibles)) {
  for (const auto& chi : irreducibles_) {
    if (chi.structure_ptr() != structure_) throw Error("character table row on a foreign class structure");
    degrees_.push_back(chi.degree().integer());
  }
}

std::size_t CharacterTable::trivial_index() const {
  const Cyclotomic one(1);
  for (std::size_t i = 0; i < irreducibles_.size(); ++i) {
    const auto& v = irreducibles_[i].values();
    if (std::all_of(v.begin(), v.end(), [&](const Cyclotomic& x) { return x == one; })) return i;
  }
  throw Error("character table has no trivial character");
}

std::int64_t CharacterTable::index_of(const ClassFunction& chi) const {
  for (std::size_t i = 0; i < irreducibles_.size(); ++i)
    if (irreducibles_[i] == chi) return static_cast<std::int64_t>(i);
  return -1;
}

std::vector<std::int64_t> CharacterTable::decompose(const ClassFunction& chi) const {
  std::vector<std::int64_t> out;
  out.reserve(irreducibles_.size());
  for (const auto& irr : irreducibles_) {
    const Cyclotomic m = inner_product(chi, irr);
    if (!m.is_rational() || m.rational().denominator() != 1)
      throw Error("multiplicity " + m.to_string() + " is not an integer");
    out.push_back(m.integer());
  }
  return out;
}

std::string CharacterTable::verify() const {
  const ClassStructure& s = *structure_;
  const std::size_t k = s.class_count();
  if (irreducibles_.size() != k)
    return std::to_string(irreducibles_.size()) + " irreducibles for " + std::to_string(k) + " classes";
  std::uint64_t square_sum = 0;
  for (auto d : degrees_) {
    if (d <= 0) return "non-positive degree";
    square_sum += static_cast<std::uint64_t>(d * d);
  }
  if (square_sum != s.order()) return "sum of squared degrees is " + std::to_string(square_sum);

  std::vector<std::vector<Cyclotomic>> conjugates(k);
  for (std::size_t i = 0; i < k; ++i) conjugates[i] = irreducibles_[i].conj().values();

  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      Cyclotomic acc;
      for (std::size_t c = 0; c < k; ++c)
        acc += irreducibles_[a][c] * conjugates[b][c] * Cyclotomic(static_cast<std::int64_t>(s.sizes[c]));
      const Cyclotomic expected(a == b ? static_cast<std::int64_t>(s.order()) : 0);
      if (acc != expected)
        return "row orthogonality fails for characters " + std::to_string(a) + ", " + std::to_string(b);
    }

  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t e = c; e < k; ++e) {
      Cyclotomic acc;
      for (std::size_t i = 0; i < k; ++i) acc += irreducibles_[i][c] * conjugates[i][e];
      const Cyclotomic expected(c == e ? static_cast<std::int64_t>(s.order() / s.sizes[c]) : 0);
      if (acc != expected) return "column orthogonality fails for classes " + std::to_string(c) + ", " + std::to_string(e);
    }
  return {};
}

std::string CharacterTable::to_csv() const {
  std::ostringstream os;
  os << "char_index,degree";
  for (std::size_t c = 0; c < structure_->class_count(); ++c) os << ",class_" << c;
  os << '\n';
  for (std::size_t i = 0; i < irreducibles_.size(); ++i) {
    os << i << ',' << degrees_[i];
    for (const auto& v : irreducibles_[i].values()) os << ",\"" << v.to_string() << '"';
    os << '\n';
  }
  return os.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (quoted) throw Error("unterminated quote in CSV line");
  cells.push_back(cur);
  return cells;
}

}  // namespace

CharacterTable CharacterTable::from_csv(ClassStructurePtr structure, const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw Error("empty character CSV");
  const std::size_t k = structure->class_count();
  if (split_csv_line(line).size() != k + 2) throw Error("character CSV header does not match the class count");
  std::vector<ClassFunction> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != k + 2) throw Error("character CSV row has wrong width");
    std::vector<Cyclotomic> v;
    for (std::size_t c = 0; c < k; ++c) v.push_back(Cyclotomic::parse(cells[c + 2]));
    rows.emplace_back(structure, std::move(v));
    if (rows.back().degree() != Cyclotomic(std::stoll(cells[1]))) throw Error("character CSV degree column disagrees");
  }
  return CharacterTable(std::move(structure), std::move(rows));
}

// ---------------------------------------------------------------------------
// Dixon-Schneider

namespace {

using u64 = std::uint64_t;

struct Zp {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a % p == 0) throw Error("Dixon-Schneider: division by zero modulo the prime (defect)");
    return pow(a, p - 2);
  }
};

using Vec = std::vector<u64>;
using Poly = std::vector<u64>;  // low to high

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_rem(const Zp& F, Poly a, const Poly& b) {
  trim(a);
  const u64 lead_inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    const u64 factor = F.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(factor, b[i]));
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Zp& F, const Poly& a, const Poly& b, const Poly& m) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  return poly_rem(F, r, m);
}

Poly poly_powmod(const Zp& F, Poly base, u64 e, const Poly& m) {
  Poly r{1};
  r = poly_rem(F, r, m);
  base = poly_rem(F, base, m);
  while (e) {
    if (e & 1) r = poly_mulmod(F, r, base, m);
    base = poly_mulmod(F, base, base, m);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(const Zp& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const u64 inv = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, inv);
  }
  return a;
}

// Distinct roots of a squarefree product of linear factors (Cantor-Zassenhaus).
void split_roots(const Zp& F, const Poly& f, u64 shift, std::vector<u64>& roots) {
  if (f.size() <= 1) return;
  if (f.size() == 2) {
    roots.push_back(F.mul(F.sub(0, f[0]), F.inv(f[1])));
    return;
  }
  if (F.p == 2) {
    for (u64 x = 0; x < 2; ++x) {
      u64 v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = F.add(F.mul(v, x), f[i]);
      if (v == 0) roots.push_back(x);
    }
    return;
  }
  for (u64 a = shift;; ++a) {
    Poly h = poly_powmod(F, Poly{a % F.p, 1}, (F.p - 1) / 2, f);
    if (h.empty()) h = {0};
    h[0] = F.sub(h[0], 1);
    Poly g = poly_gcd(F, f, h);
    if (g.size() > 1 && g.size() < f.size()) {
      split_roots(F, g, a + 1, roots);
      Poly rest = f;
      // rest = f / g
      Poly q(f.size() - g.size() + 1, 0);
      for (std::size_t i = q.size(); i-- > 0;) {
        q[i] = rest[i + g.size() - 1];
        for (std::size_t j = 0; j < g.size(); ++j) rest[i + j] = F.sub(rest[i + j], F.mul(q[i], g[j]));
      }
      split_roots(F, q, a + 1, roots);
      return;
    }
    if (a > shift + 4 * F.p) throw Error("Dixon-Schneider: root splitting did not terminate (defect)");
  }
}

std::vector<u64> distinct_roots(const Zp& F, Poly f) {
  trim(f);
  Poly xp = poly_powmod(F, Poly{0, 1}, F.p, f);
  xp.resize(std::max<std::size_t>(xp.size(), 2), 0);
  xp[1] = F.sub(xp[1], 1);
  Poly g = poly_gcd(F, f, xp);
  std::vector<u64> roots;
  split_roots(F, g, 0, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Characteristic polynomial via reduction to Hessenberg form.
Poly charpoly(const Zp& F, std::vector<Vec> h) {
  const std::size_t d = h.size();
  for (std::size_t m = 1; m + 1 < d; ++m) {
    std::size_t piv = m;
    while (piv < d && h[piv][m - 1] == 0) ++piv;
    if (piv == d) continue;
    if (piv != m) {
      std::swap(h[piv], h[m]);
      for (std::size_t r = 0; r < d; ++r) std::swap(h[r][piv], h[r][m]);
    }
    const u64 inv = F.inv(h[m][m - 1]);
    for (std::size_t r = m + 1; r < d; ++r) {
      const u64 u = F.mul(h[r][m - 1], inv);
      if (u == 0) continue;
      for (std::size_t c = 0; c < d; ++c) h[r][c] = F.sub(h[r][c], F.mul(u, h[m][c]));
      for (std::size_t c = 0; c < d; ++c) h[c][m] = F.add(h[c][m], F.mul(u, h[c][r]));
    }
  }
  std::vector<Poly> p(d + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= d; ++m) {
    // (x - h[m-1][m-1]) * p[m-1]
    Poly cur(m + 1, 0);
    for (std::size_t i = 0; i < p[m - 1].size(); ++i) {
      cur[i + 1] = F.add(cur[i + 1], p[m - 1][i]);
      cur[i] = F.sub(cur[i], F.mul(h[m - 1][m - 1], p[m - 1][i]));
    }
    u64 t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = F.mul(t, h[m - i][m - i - 1]);
      const u64 coef = F.mul(t, h[m - i - 1][m - 1]);
      for (std::size_t j = 0; j < p[m - i - 1].size(); ++j) cur[j] = F.sub(cur[j], F.mul(coef, p[m - i - 1][j]));
    }
    p[m] = std::move(cur);
  }
  return p[d];
}

// Row-reduces in place; returns pivot columns. Rows become a basis in RREF.
std::vector<std::size_t> rref(const Zp& F, std::vector<Vec>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const u64 inv = F.inv(rows[r][c]);
    for (auto& x : rows[r]) x = F.mul(x, inv);
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c] == 0) continue;
      const u64 f = rows[o][c];
      for (std::size_t j = 0; j < cols; ++j) rows[o][j] = F.sub(rows[o][j], F.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

// Basis of the kernel of a d x d matrix.
std::vector<Vec> kernel(const Zp& F, std::vector<Vec> a) {
  const std::size_t d = a.size();
  const auto pivots = rref(F, a);
  std::vector<bool> is_pivot(d, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    Vec v(d, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.sub(0, a[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

u64 primitive_root(u64 p) {
  const Zp F{p};
  const auto factors = prime_factors(p - 1);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (auto q : factors)
      if (F.pow(g, (p - 1) / q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

}  // namespace

std::uint64_t dixon_prime(std::uint64_t group_order, std::uint64_t exponent) {
  for (std::uint64_t l = exponent + 1;; l += exponent)
    if (l * l > 4 * group_order && is_prime(l)) return l;
}

CharacterTable character_table(ClassStructurePtr sp) {
  const ClassStructure& s = *sp;
  const Group& g = *s.ambient;
  const std::size_t k = s.class_count();
  const u64 order = s.order();
  const Zp F{dixon_prime(order, s.exponent())};

  // a[(j*k + i)*k + l] = #{y in C_j : y^-1 z_l in C_i}
  std::vector<std::uint32_t> coeff(k * k * k, 0);
  for (auto y : s.members) {
    const std::size_t j = s.class_of[y];
    const auto yinv = g.inverse_index(y);
    for (std::size_t l = 0; l < k; ++l) {
      const auto i = s.class_of[g.multiply(yinv, s.representatives[l])];
      if (i < 0) throw Error("class structure " + s.name + " is not closed under multiplication");
      ++coeff[(j * k + static_cast<std::size_t>(i)) * k + l];
    }
  }

  std::vector<std::vector<Vec>> spaces;
  {
    std::vector<Vec> whole(k, Vec(k, 0));
    for (std::size_t i = 0; i < k; ++i) whole[i][i] = 1;
    spaces.push_back(std::move(whole));
  }
  for (std::size_t j = 1; j < k; ++j) {
    if (std::all_of(spaces.begin(), spaces.end(), [](const auto& w) { return w.size() == 1; })) break;
    std::vector<std::vector<Vec>> next;
    for (auto& w : spaces) {
      const std::size_t d = w.size();
      if (d == 1) {
        next.push_back(std::move(w));
        continue;
      }
      auto pivots = rref(F, w);
      // Image of each basis vector under the class matrix, in basis coordinates.
      std::vector<Vec> a(d, Vec(d, 0));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t srow = 0; srow < d; ++srow) {
          const std::size_t i = pivots[srow];
          u64 acc = 0;
          for (std::size_t l = 0; l < k; ++l)
            if (w[r][l]) acc = F.add(acc, F.mul(coeff[(j * k + i) * k + l] % F.p, w[r][l]));
          a[srow][r] = acc;
        }
      const auto roots = distinct_roots(F, charpoly(F, a));
      if (roots.size() == 1) {
        // Check the whole space is one eigenspace.
        std::vector<Vec> shifted = a;
        for (std::size_t r = 0; r < d; ++r) shifted[r][r] = F.sub(shifted[r][r], roots[0]);
        if (kernel(F, shifted).size() != d) throw Error("class matrix is not diagonalizable modulo the prime (defect)");
        next.push_back(std::move(w));
        continue;
      }
      std::size_t total = 0;
      for (auto lambda : roots) {
        std::vector<Vec> shifted = a;
        for (std::size_t r = 0; r < d; ++r) shifted[r][r] = F.sub(shifted[r][r], lambda);
        std::vector<Vec> sub;
        for (const auto& c : kernel(F, shifted)) {
          Vec v(k, 0);
          for (std::size_t r = 0; r < d; ++r)
            if (c[r])
              for (std::size_t l = 0; l < k; ++l) v[l] = F.add(v[l], F.mul(c[r], w[r][l]));
          sub.push_back(std::move(v));
        }
        total += sub.size();
        next.push_back(std::move(sub));
      }
      if (total != d) throw Error("class matrix eigenspaces do not span (defect)");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != k) throw Error("Dixon-Schneider left " + std::to_string(k - spaces.size()) + " unsplit dimensions");

  const u64 root = primitive_root(F.p);
  const auto bound = static_cast<u64>(std::sqrt(static_cast<double>(order))) + 1;
  std::vector<ClassFunction> rows;
  for (auto& w : spaces) {
    rref(F, w);
    const Vec& v = w[0];
    if (v[0] != 1) throw Error("eigenvector has zero identity coordinate (defect)");
    u64 norm = 0;
    for (std::size_t i = 0; i < k; ++i)
      norm = F.add(norm, F.mul(F.mul(v[i], v[s.inverse_class[i]]), F.inv(s.sizes[i] % F.p)));
    const u64 target = F.mul(order % F.p, F.inv(norm));
    u64 degree = 0;
    for (u64 d = 1; d <= bound && d * d <= order; ++d)
      if (F.mul(d, d) == target) {
        degree = d;
        break;
      }
    if (degree == 0) throw Error("no character degree matches modulo the prime (defect)");
    Vec modvalues(k);
    for (std::size_t i = 0; i < k; ++i) modvalues[i] = F.mul(F.mul(v[i], degree), F.inv(s.sizes[i] % F.p));

    std::vector<Cyclotomic> values(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto o = static_cast<u64>(s.element_order[i]);
      const u64 zeta = F.pow(root, (F.p - 1) / o);
      const u64 zeta_inv = F.inv(zeta);
      const u64 o_inv = F.inv(o % F.p);
      std::vector<Rational> mult(o);
      u64 total = 0;
      for (u64 t = 0; t < o; ++t) {
        u64 acc = 0;
        const u64 step = F.pow(zeta_inv, t);
        u64 w_pow = 1;
        for (u64 e = 0; e < o; ++e) {
          acc = F.add(acc, F.mul(modvalues[s.power_class[i][e]], w_pow));
          w_pow = F.mul(w_pow, step);
        }
        const u64 m = F.mul(acc, o_inv);
        if (m > degree) throw Error("eigenvalue multiplicity out of range (defect)");
        mult[t] = Rational(static_cast<std::int64_t>(m));
        total += m;
      }
      if (total != degree) throw Error("eigenvalue multiplicities do not sum to the degree (defect)");
      values[i] = Cyclotomic::from_powers(static_cast<std::int64_t>(o), mult);
    }
    rows.emplace_back(sp, std::move(values));
  }

  std::sort(rows.begin(), rows.end(), [](const ClassFunction& a, const ClassFunction& b) {
    const auto da = a.degree().integer(), db = b.degree().integer();
    if (da != db) return da < db;
    for (std::size_t c = 0; c < a.size(); ++c) {
      const int cmp = Cyclotomic::compare(a[c], b[c]);
      if (cmp) return cmp < 0;
    }
    return false;
  });
  CharacterTable table(sp, std::move(rows));
  if (auto err = table.verify(); !err.empty()) throw Error("character table of " + s.name + ": " + err + " (defect)");
  return table;
}

// ---------------------------------------------------------------------------
// Restriction and products

ClassFunction restrict(const ClassFunction& chi, ClassStructurePtr sub) {
  const ClassStructure& from = chi.structure();
  if (from.ambient != sub->ambient) throw Error("restrict: structures have different ambient groups");
  std::vector<Cyclotomic> v(sub->class_count());
  for (std::size_t c = 0; c < v.size(); ++c) {
    const auto cls = from.class_of_element(sub->representatives[c]);
    if (cls < 0) throw Error("restrict: " + sub->name + " is not contained in " + from.name);
    v[c] = chi[cls];
  }
  return ClassFunction(std::move(sub), std::move(v));
}

ClassFunction external_tensor(const Levi& levi, const std::vector<ClassFunction>& factors) {
  if (static_cast<int>(factors.size()) != levi.blocks()) throw Error("external tensor: wrong number of factors");
  for (int b = 0; b < levi.blocks(); ++b)
    if (factors[b].structure_ptr() != levi.factor(b).structure())
      throw Error("external tensor: factor " + std::to_string(b) + " is not on the block's class table");
  auto s = levi.structure();
  std::vector<Cyclotomic> v(s->class_count());
  for (std::size_t c = 0; c < v.size(); ++c) {
    const auto parts = levi.split(static_cast<std::int32_t>(c));
    Cyclotomic acc(1);
    for (std::size_t b = 0; b < parts.size(); ++b) acc *= factors[b][parts[b]];
    v[c] = acc;
  }
  return ClassFunction(std::move(s), std::move(v));
}

CharacterTable levi_character_table(const Levi& levi, const std::vector<CharacterTablePtr>& factors) {
  if (static_cast<int>(factors.size()) != levi.blocks()) throw Error("Levi character table: wrong number of factors");
  std::size_t count = 1;
  for (const auto& t : factors) count *= t->size();
  std::vector<ClassFunction> rows;
  rows.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<ClassFunction> parts(factors.size());
    std::size_t t = idx;
    for (std::size_t b = factors.size(); b-- > 0;) {
      parts[b] = (*factors[b])[t % factors[b]->size()];
      t /= factors[b]->size();
    }
    rows.push_back(external_tensor(levi, parts));
  }
  return CharacterTable(levi.structure(), std::move(rows));
}

}  // namespace glfq
