#include "glfq/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace glfq {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

namespace {

// Dense polynomials over F_p, low-to-high, trimmed.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * m[i] % p) % p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test: f | x^{p^k} - x and gcd(f, x^{p^{k/r}} - x) = 1 for primes r | k.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t k = static_cast<std::uint32_t>(f.size() - 1);
  if (k == 1) return true;
  auto x_pow_minus_x = [&](std::uint32_t d) {
    Poly r = poly_powmod(Poly{0, 1}, ipow(p, d), f, p);
    r.resize(std::max<std::size_t>(r.size(), 2), 0);
    r[1] = (r[1] + p - 1) % p;
    trim(r);
    return r;
  };
  if (!x_pow_minus_x(k).empty()) return false;
  for (auto r : prime_factors(k)) {
    Poly g = poly_gcd(f, x_pow_minus_x(k / static_cast<std::uint32_t>(r)), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly poly_from_code(std::uint32_t enc, std::uint32_t p, std::uint32_t k) {
  Poly a(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    a[i] = enc % p;
    enc /= p;
  }
  trim(a);
  return a;
}

std::uint32_t poly_encode(const Poly& a, std::uint32_t p) {
  std::uint32_t enc = 0;
  for (std::size_t i = a.size(); i-- > 0;) enc = enc * p + a[i];
  return enc;
}

}  // namespace

FieldPtr build_field(std::uint32_t p, std::uint32_t k) {
  if (p % 2 == 0) throw Error("characteristic must be odd, got " + std::to_string(p));
  if (!is_prime(p)) throw Error("characteristic must be prime, got " + std::to_string(p));
  if (k < 1) throw Error("field degree must be positive");
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    order *= p;
    if (order > kMaxFieldOrder) throw BoundError("field order exceeds " + std::to_string(kMaxFieldOrder));
  }

  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find({p, k}); it != cache.end()) return it->second;

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->k_ = k;
  f->order_ = static_cast<std::uint32_t>(order);

  // Modulus: smallest (c0, c1, ..., c_{k-1}) with c0 most significant.
  Poly modulus;
  const std::uint32_t count = static_cast<std::uint32_t>(order);
  for (std::uint32_t idx = 0; idx < count && modulus.empty(); ++idx) {
    Poly cand(k + 1, 0);
    std::uint32_t t = idx;
    for (std::uint32_t i = k; i-- > 0;) {
      cand[i] = t % p;
      t /= p;
    }
    cand[k] = 1;
    if (cand[0] == 0 && k > 1) continue;
    if (is_irreducible(cand, p)) modulus = cand;
  }
  if (k == 1) modulus = {0, 1};  // x; elements are constants, modulus only formal
  f->modulus_ = modulus;

  const std::uint32_t n = count - 1;
  const auto q_factors = prime_factors(n);
  std::uint32_t gen = 0;
  for (std::uint32_t enc = 1; enc < count && gen == 0; ++enc) {
    Poly a = poly_from_code(enc, p, k);
    bool primitive = true;
    for (auto r : q_factors) {
      Poly pw = poly_powmod(a, n / r, modulus, p);
      if (pw.size() == 1 && pw[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (n == 1 || primitive) gen = enc;
  }

  f->poly_of_log_.resize(n);
  f->code_of_poly_.assign(count, 0);
  Poly g = poly_from_code(gen, p, k);
  Poly cur{1};
  for (std::uint32_t l = 0; l < n; ++l) {
    const std::uint32_t enc = poly_encode(cur, p);
    f->poly_of_log_[l] = enc;
    f->code_of_poly_[enc] = static_cast<FieldCode>(l + 1);
    cur = poly_mulmod(cur, g, modulus, p);
  }
  f->zech_.resize(n);
  for (std::uint32_t l = 0; l < n; ++l) {
    Poly a = poly_from_code(f->poly_of_log_[l], p, k);
    a.resize(std::max<std::size_t>(a.size(), 1), 0);
    a[0] = (a[0] + 1) % p;
    trim(a);
    const std::uint32_t enc = poly_encode(a, p);
    f->zech_[l] = enc == 0 ? -1 : static_cast<std::int32_t>(f->code_of_poly_[enc] - 1);
  }
  cache[{p, k}] = f;
  return f;
}

FieldCode Field::pow(FieldCode a, std::int64_t e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw Error("inverse of zero");
    return 0;
  }
  const std::int64_t n = order_ - 1;
  std::int64_t l = static_cast<std::int64_t>(a - 1u) * (((e % n) + n) % n) % n;
  return static_cast<FieldCode>(1 + l);
}

std::uint32_t Field::element_order(FieldCode a) const {
  if (a == 0) throw Error("order of zero");
  const std::uint32_t n = order_ - 1;
  std::uint32_t l = a - 1u;
  std::uint32_t g = n, b = l;
  while (b) {
    std::uint32_t t = g % b;
    g = b;
    b = t;
  }
  return n / g;
}

FieldCode Field::from_int(std::int64_t v) const {
  const std::int64_t p = p_;
  return code_of_poly_[static_cast<std::uint32_t>(((v % p) + p) % p)];
}

std::uint32_t Field::prime_value(FieldCode a) const {
  const std::uint32_t poly = to_poly(a);
  if (poly >= p_) throw Error("element is not in the prime field");
  return poly;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF(" << p_ << "^" << k_ << "; modulus=[";
  for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  os << "])";
  return os.str();
}

FieldElement frobenius(const FieldElement& x, std::uint64_t q) {
  const Field& f = x.field();
  std::uint64_t e = 0, t = 1;
  while (t < q) {
    t *= f.characteristic();
    ++e;
  }
  if (t != q || e == 0 || f.degree() % e != 0)
    throw Error("frobenius: " + std::to_string(q) + " is not a subfield order of " + f.describe());
  return {&f, f.pow(x.code(), static_cast<std::int64_t>(q))};
}

namespace {

void require_tower(const Field& sub, const Field& over) {
  if (sub.characteristic() != over.characteristic() || over.degree() % sub.degree() != 0)
    throw Error("fields " + sub.describe() + " and " + over.describe() + " are not in a tower");
}

// Minimal polynomial over F_p of a code of `f`, as integer coefficients.
std::vector<std::uint32_t> minimal_polynomial(const Field& f, FieldCode a) {
  std::vector<FieldCode> conj{a};
  for (FieldCode c = f.pow(a, f.characteristic()); c != a; c = f.pow(c, f.characteristic()))
    conj.push_back(c);
  std::vector<FieldCode> poly{f.one()};  // prod (x - c)
  for (FieldCode c : conj) {
    std::vector<FieldCode> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], poly[i]);
      next[i] = f.sub(next[i], f.mul(poly[i], c));
    }
    poly = std::move(next);
  }
  std::vector<std::uint32_t> out;
  for (FieldCode c : poly) out.push_back(f.prime_value(c));
  return out;
}

FieldCode eval_int_poly(const Field& f, const std::vector<std::uint32_t>& poly, FieldCode x) {
  FieldCode acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = f.add(f.mul(acc, x), f.from_int(poly[i]));
  return acc;
}

}  // namespace

FieldCode embedding_generator_image(const Field& sub, const Field& over) {
  require_tower(sub, over);
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, FieldCode> cache;
  const auto key = std::make_tuple(sub.characteristic(), sub.degree(), over.degree());
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const auto mp = minimal_polynomial(sub, sub.generator());
  const std::uint32_t step = (over.order() - 1) / (sub.order() - 1);
  FieldCode found = 0;
  const FieldCode preferred = over.from_log(step);
  if (eval_int_poly(over, mp, preferred) == 0) {
    found = preferred;
  } else {
    for (std::uint32_t t = 1; t < sub.order() - 1 && found == 0; ++t) {
      const FieldCode c = over.from_log(static_cast<std::int64_t>(t) * step);
      if (eval_int_poly(over, mp, c) == 0) found = c;
    }
  }
  if (found == 0) throw Error("no embedding found (defect)");
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = found;
  return found;
}

FieldCode embed_code(const Field& sub, const Field& over, FieldCode c) {
  if (c == 0) return 0;
  if (sub.degree() == over.degree()) return c;
  const FieldCode img = embedding_generator_image(sub, over);
  return over.pow(img, sub.log(c));
}

namespace {

FieldCode pull_back(const Field& sub, const Field& over, FieldCode c) {
  if (c == 0) return 0;
  if (sub.degree() == over.degree()) return c;
  const FieldCode img = embedding_generator_image(sub, over);
  const std::uint32_t li = over.log(img);
  const std::uint32_t lc = over.log(c);
  // c = img^t; img has order |sub|-1, and img = g^(u*step) with gcd(u, |sub|-1) = 1.
  const std::uint32_t step = (over.order() - 1) / (sub.order() - 1);
  if (lc % step != 0) throw Error("element does not lie in the subfield");
  const std::uint64_t n = sub.order() - 1;
  const std::uint64_t u = li / step, w = lc / step;
  // Solve u*t = w (mod n).
  for (std::uint64_t t = 0; t < n; ++t)
    if ((u * t) % n == w % n) return sub.from_log(static_cast<std::int64_t>(t));
  throw Error("pull_back failed (defect)");
}

}  // namespace

FieldElement norm_trace_embed(const FieldElement& x, const Field& target, TowerDirection direction,
                              TowerMap kind) {
  const Field& src = x.field();
  if (direction == TowerDirection::up) {
    if (kind != TowerMap::embed) throw Error("norm and trace go down the tower");
    require_tower(src, target);
    return {&target, embed_code(src, target, x.code())};
  }
  if (kind == TowerMap::embed) throw Error("embedding goes up the tower");
  require_tower(target, src);
  const std::uint64_t q = target.order();
  const std::uint32_t r = src.degree() / target.degree();
  FieldCode acc = kind == TowerMap::norm ? src.one() : src.zero();
  FieldCode conj = x.code();
  for (std::uint32_t i = 0; i < r; ++i) {
    acc = kind == TowerMap::norm ? src.mul(acc, conj) : src.add(acc, conj);
    conj = src.pow(conj, static_cast<std::int64_t>(q));
  }
  return {&target, pull_back(target, src, acc)};
}

std::uint32_t absolute_trace(const Field& f, FieldCode c) {
  FieldCode acc = 0, conj = c;
  for (std::uint32_t i = 0; i < f.degree(); ++i) {
    acc = f.add(acc, conj);
    conj = f.pow(conj, f.characteristic());
  }
  return f.prime_value(acc);
}

FieldCode smallest_nonsquare(const Field& f, std::uint64_t subfield_order) {
  if ((f.order() - 1) % (subfield_order - 1) != 0) throw Error("not a subfield order");
  const std::uint32_t step = static_cast<std::uint32_t>((f.order() - 1) / (subfield_order - 1));
  return f.from_log(step);
}

}  // namespace glfq
