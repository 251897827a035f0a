#include "glfq/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "glfq/ff.hpp"

namespace glfq {

namespace {

struct PrimePart {
  std::int64_t p;
  int k;
  std::int64_t q;         // p^k
  std::int64_t cofactor;  // N / q
  std::int64_t inverse;   // (N/q)^-1 mod q
};

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, nt = 1, r = m, nr = mod(a, m);
  while (nr) {
    const std::int64_t qq = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
    std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
  }
  return mod(t, m);
}

struct ReductionTable {
  std::int64_t N;
  std::vector<PrimePart> parts;
  // expansion[e] = basis exponents with signs summing to zeta_N^e.
  std::vector<std::vector<std::pair<std::int64_t, int>>> expansion;
};

std::vector<PrimePart> prime_parts(std::int64_t N) {
  std::vector<PrimePart> parts;
  for (auto p64 : prime_factors(static_cast<std::uint64_t>(N))) {
    const auto p = static_cast<std::int64_t>(p64);
    PrimePart pp{p, 0, 1, 0, 0};
    std::int64_t t = N;
    while (t % p == 0) {
      t /= p;
      pp.q *= p;
      ++pp.k;
    }
    pp.cofactor = N / pp.q;
    pp.inverse = inverse_mod(pp.cofactor, pp.q);
    parts.push_back(pp);
  }
  return parts;
}

std::shared_ptr<const ReductionTable> table_for(std::int64_t N) {
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const ReductionTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(N); it != cache.end()) return it->second;
  }
  auto t = std::make_shared<ReductionTable>();
  t->N = N;
  t->parts = prime_parts(N);
  t->expansion.resize(N);
  for (std::int64_t e = 0; e < N; ++e) {
    std::vector<std::pair<std::int64_t, int>> acc{{0, 1}};
    for (const auto& pp : t->parts) {
      const std::int64_t c = mod(e * pp.inverse, pp.q);
      const std::int64_t low = pp.q / pp.p;  // p^{k-1}
      const std::int64_t phi = pp.q - low;
      std::vector<std::pair<std::int64_t, int>> local;
      if (c < phi) {
        local.push_back({c, 1});
      } else {
        const std::int64_t r = c - phi;
        for (std::int64_t s = 0; s + 1 < pp.p; ++s) local.push_back({s * low + r, -1});
      }
      std::vector<std::pair<std::int64_t, int>> next;
      for (auto [ea, sa] : acc)
        for (auto [cl, sl] : local) next.push_back({mod(ea + cl * pp.cofactor, N), sa * sl});
      acc = std::move(next);
    }
    t->expansion[e] = std::move(acc);
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[N] = t;
  return t;
}

}  // namespace

Cyclotomic::Cyclotomic(Rational v) {
  if (v.numerator() != 0) terms_.push_back({0, v});
}

Cyclotomic Cyclotomic::reduce(std::int64_t N, const std::vector<std::pair<std::int64_t, Rational>>& raw) {
  auto table = table_for(N);
  std::vector<Rational> dense(N, Rational(0));
  for (const auto& [e, c] : raw)
    for (auto [b, s] : table->expansion[mod(e, N)]) dense[b] += s > 0 ? c : -c;
  std::vector<std::pair<std::int64_t, Rational>> terms;
  for (std::int64_t e = 0; e < N; ++e)
    if (dense[e].numerator() != 0) terms.push_back({e, dense[e]});

  // Lower the conductor one prime at a time while the support allows it.
  bool changed = true;
  while (changed && N > 1 && !terms.empty()) {
    changed = false;
    for (const auto& pp : prime_parts(N)) {
      bool ok = true;
      for (const auto& term : terms) {
        const std::int64_t c = mod(term.first * pp.inverse, pp.q);
        if (pp.k >= 2 ? c % pp.p != 0 : c != 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (auto& term : terms) term.first /= pp.p;
      N /= pp.p;
      changed = true;
      break;
    }
  }
  Cyclotomic out;
  out.conductor_ = terms.empty() ? 1 : N;
  out.terms_ = std::move(terms);
  return out;
}

std::vector<std::pair<std::int64_t, Rational>> Cyclotomic::lifted(std::int64_t M) const {
  std::vector<std::pair<std::int64_t, Rational>> out;
  out.reserve(terms_.size());
  const std::int64_t factor = M / conductor_;
  for (const auto& [e, c] : terms_) out.push_back({e * factor, c});
  return out;
}

Cyclotomic Cyclotomic::root_of_unity(std::int64_t e, std::int64_t k) {
  if (e < 1) throw Error("root of unity order must be positive");
  return reduce(e, {{mod(k, e), Rational(1)}});
}

Cyclotomic Cyclotomic::from_powers(std::int64_t e, const std::vector<Rational>& coeffs) {
  std::vector<std::pair<std::int64_t, Rational>> raw;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k].numerator() != 0) raw.push_back({static_cast<std::int64_t>(k), coeffs[k]});
  return reduce(e, raw);
}

Rational Cyclotomic::rational() const {
  if (!is_rational()) throw Error("cyclotomic value " + to_string() + " is not rational");
  return terms_.empty() ? Rational(0) : terms_[0].second;
}

std::int64_t Cyclotomic::integer() const {
  const Rational r = rational();
  if (r.denominator() != 1) throw Error("cyclotomic value " + to_string() + " is not an integer");
  return r.numerator();
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  const std::int64_t M = std::lcm(conductor_, o.conductor_);
  auto raw = lifted(M);
  auto other = o.lifted(M);
  raw.insert(raw.end(), other.begin(), other.end());
  return reduce(M, raw);
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& term : out.terms_) term.second = -term.second;
  return out;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (o.is_rational()) {
    Cyclotomic out = *this;
    for (auto& term : out.terms_) term.second *= o.terms_[0].second;
    return out;
  }
  if (is_rational()) return o * *this;
  const std::int64_t M = std::lcm(conductor_, o.conductor_);
  const auto a = lifted(M), b = o.lifted(M);
  std::vector<std::pair<std::int64_t, Rational>> raw;
  raw.reserve(a.size() * b.size());
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) raw.push_back({(ea + eb) % M, ca * cb});
  return reduce(M, raw);
}

Cyclotomic Cyclotomic::operator/(const Rational& r) const {
  if (r.numerator() == 0) throw Error("division by zero");
  Cyclotomic out = *this;
  for (auto& term : out.terms_) term.second /= r;
  return out;
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::galois(std::int64_t k) const {
  if (is_rational()) return *this;
  if (std::gcd(mod(k, conductor_), conductor_) != 1) throw Error("galois exponent not coprime to conductor");
  std::vector<std::pair<std::int64_t, Rational>> raw;
  for (const auto& [e, c] : terms_) raw.push_back({mod(e * k, conductor_), c});
  return reduce(conductor_, raw);
}

int Cyclotomic::compare(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor_ != b.conductor_) return a.conductor_ < b.conductor_ ? -1 : 1;
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    std::int64_t ea = i < a.terms_.size() ? a.terms_[i].first : a.conductor_;
    std::int64_t eb = j < b.terms_.size() ? b.terms_[j].first : b.conductor_;
    const std::int64_t e = std::min(ea, eb);
    const Rational ca = ea == e ? a.terms_[i].second : Rational(0);
    const Rational cb = eb == e ? b.terms_[j].second : Rational(0);
    if (ca != cb) return cb < ca ? -1 : 1;
    if (ea == e) ++i;
    if (eb == e) ++j;
  }
  return 0;
}

std::string Cyclotomic::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first && c.numerator() > 0) os << '+';
    first = false;
    os << c.numerator();
    if (c.denominator() != 1) os << '/' << c.denominator();
    if (conductor_ > 1) os << "*E(" << conductor_ << ',' << e << ')';
  }
  return os.str();
}

Cyclotomic Cyclotomic::parse(const std::string& s) {
  if (s == "0") return {};
  Cyclotomic acc;
  std::size_t pos = 0;
  auto fail = [&]() -> Cyclotomic { throw Error("cannot parse cyclotomic value '" + s + "'"); };
  while (pos < s.size()) {
    std::size_t end = pos;
    std::int64_t num = 0, den = 1;
    try {
      std::size_t used = 0;
      num = std::stoll(s.substr(pos), &used);
      end = pos + used;
      if (end < s.size() && s[end] == '/') {
        den = std::stoll(s.substr(end + 1), &used);
        end += 1 + used;
      }
    } catch (const std::exception&) {
      return fail();
    }
    if (den <= 0) return fail();
    if (end == s.size() || s[end] == '+' || s[end] == '-') {
      acc += Cyclotomic(Rational(num, den));
      pos = end;
      if (pos < s.size() && s[pos] == '+') ++pos;
      continue;
    }
    if (s.compare(end, 3, "*E(") != 0) return fail();
    std::int64_t N = 0, j = 0;
    if (std::sscanf(s.c_str() + end + 3, "%lld,%lld", reinterpret_cast<long long*>(&N), reinterpret_cast<long long*>(&j)) != 2)
      return fail();
    const std::size_t close = s.find(')', end);
    if (close == std::string::npos || N < 1) return fail();
    acc += Cyclotomic(Rational(num, den)) * root_of_unity(N, j);
    pos = close + 1;
    if (pos < s.size() && s[pos] == '+') ++pos;
  }
  return acc;
}

std::pair<double, double> Cyclotomic::approx() const {
  double re = 0, im = 0;
  const double two_pi = 2.0 * std::acos(-1.0);
  for (const auto& [e, c] : terms_) {
    const double v = static_cast<double>(c.numerator()) / static_cast<double>(c.denominator());
    re += v * std::cos(two_pi * static_cast<double>(e) / static_cast<double>(conductor_));
    im += v * std::sin(two_pi * static_cast<double>(e) / static_cast<double>(conductor_));
  }
  return {re, im};
}

}  // namespace glfq
