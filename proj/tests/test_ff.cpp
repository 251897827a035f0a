#include "doctest.h"

#include <set>
#include <vector>

#include "glfq/ff.hpp"

using namespace glfq;

namespace {

// Naive polynomial model of F_{p^k}: coefficient vectors reduced by the modulus.
struct PolyField {
  std::uint32_t p, k;
  std::vector<std::uint32_t> modulus;

  std::vector<std::uint32_t> decode(std::uint32_t enc) const {
    std::vector<std::uint32_t> c(k, 0);
    for (std::uint32_t i = 0; i < k; ++i, enc /= p) c[i] = enc % p;
    return c;
  }
  std::uint32_t encode(const std::vector<std::uint32_t>& c) const {
    std::uint32_t e = 0;
    for (std::uint32_t i = k; i-- > 0;) e = e * p + c[i];
    return e;
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    auto x = decode(a), y = decode(b);
    for (std::uint32_t i = 0; i < k; ++i) x[i] = (x[i] + y[i]) % p;
    return encode(x);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    auto x = decode(a), y = decode(b);
    std::vector<std::uint32_t> prod(2 * k, 0);
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    for (std::uint32_t d = 2 * k; d-- > k;) {
      const std::uint32_t c = prod[d];
      if (!c) continue;
      for (std::uint32_t i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + p * p - c * modulus[i] % p) % p;
    }
    prod.resize(k);
    return encode(prod);
  }
};

PolyField model(const Field& f) { return {f.characteristic(), f.degree(), f.modulus()}; }

}  // namespace

TEST_CASE("prime field F_3") {
  auto f = build_field(3, 1);
  CHECK(f->order() == 3);
  const FieldCode one = f->one(), two = f->from_int(2);
  CHECK(f->add(one, two) == f->zero());
  CHECK(f->prime_value(two) == 2);
  CHECK(f->describe() == "GF(3^1; modulus=[0,1])");
}

TEST_CASE("F_9 generator has order 8 and the build is deterministic") {
  auto f = build_field(3, 2);
  const FieldCode g = f->generator();
  CHECK(f->pow(g, 8) == f->one());
  CHECK(f->pow(g, 4) != f->one());
  CHECK(f->element_order(g) == 8);
  auto again = build_field(3, 2);
  CHECK(again->modulus() == f->modulus());
  CHECK(again->generator_poly() == f->generator_poly());
}

TEST_CASE("modulus is the smallest monic irreducible") {
  // F_9: x^2+1 is the first irreducible in low-to-high order.
  CHECK(build_field(3, 2)->modulus() == std::vector<std::uint32_t>{1, 0, 1});
  // F_25: x^2+1 splits since -1 is a square mod 5; x^2+x+1 is next.
  CHECK(build_field(5, 2)->modulus() == std::vector<std::uint32_t>{1, 1, 1});
}

TEST_CASE("Zech arithmetic agrees with polynomial arithmetic") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {3, 3}, {5, 2}, {7, 1}, {3, 4}}) {
    auto f = build_field(p, k);
    const PolyField m = model(*f);
    CAPTURE(f->describe());
    for (std::uint32_t a = 0; a < f->order(); ++a)
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        const FieldCode x = f->from_poly(a), y = f->from_poly(b);
        REQUIRE(f->to_poly(f->add(x, y)) == m.add(a, b));
        REQUIRE(f->to_poly(f->mul(x, y)) == m.mul(a, b));
      }
  }
}

TEST_CASE("field axioms exhaustively up to 3^4") {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 2}, {5, 1}, {3, 3}}) {
    auto f = build_field(p, k);
    const auto n = f->order();
    for (FieldCode a = 0; a < n; ++a) {
      CHECK(f->add(a, f->neg(a)) == 0);
      if (a) CHECK(f->mul(a, f->inv(a)) == f->one());
      for (FieldCode b = 0; b < n; ++b)
        for (FieldCode c = 0; c < n; ++c) {
          REQUIRE(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
          REQUIRE(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
          REQUIRE(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
        }
    }
  }
  auto f = build_field(3, 4);
  for (FieldCode a = 1; a < f->order(); ++a) REQUIRE(f->mul(a, f->inv(a)) == f->one());
}

TEST_CASE("frobenius on F_9 over F_3") {
  auto f = build_field(3, 2);
  const FieldElement g(f.get(), f->generator());
  CHECK(frobenius(g, 3).code() == f->pow(g.code(), 3));
  CHECK(frobenius(frobenius(g, 3), 3) == g);
  int fixed = 0;
  for (FieldCode a = 0; a < f->order(); ++a) {
    const FieldElement x(f.get(), a);
    if (frobenius(x, 3) == x) ++fixed;
  }
  CHECK(fixed == 3);
  CHECK_THROWS_AS(frobenius(g, 5), Error);
}

TEST_CASE("frobenius is an automorphism fixing exactly the subfield") {
  for (auto [p, k, q] : std::vector<std::tuple<int, int, int>>{{3, 2, 3}, {3, 4, 3}, {3, 4, 9}, {5, 2, 5}}) {
    auto f = build_field(p, k);
    std::uint32_t fixed = 0;
    for (FieldCode a = 0; a < f->order(); ++a) {
      const FieldElement x(f.get(), a);
      if (frobenius(x, q) == x) ++fixed;
      for (FieldCode b = 0; b < f->order(); b += 7) {
        const FieldElement y(f.get(), b);
        REQUIRE(frobenius(x * y, q) == frobenius(x, q) * frobenius(y, q));
        REQUIRE(frobenius(x + y, q) == frobenius(x, q) + frobenius(y, q));
      }
    }
    CHECK(fixed == static_cast<std::uint32_t>(q));
  }
}

TEST_CASE("norm F_9 -> F_3") {
  auto big = build_field(3, 2);
  auto small = build_field(3, 1);
  const FieldElement g(big.get(), big->generator());
  // g^(1+3) by the power table.
  const FieldElement n = norm_trace_embed(g, *small, TowerDirection::down, TowerMap::norm);
  CHECK(small->prime_value(n.code()) == 2);
  const FieldElement one(big.get(), big->one()), zero(big.get(), 0);
  CHECK(norm_trace_embed(one, *small, TowerDirection::down, TowerMap::norm).code() == small->one());
  CHECK(norm_trace_embed(zero, *small, TowerDirection::down, TowerMap::trace).code() == 0);
  std::vector<int> fibre(small->order(), 0);
  for (FieldCode a = 1; a < big->order(); ++a)
    ++fibre[norm_trace_embed(FieldElement(big.get(), a), *small, TowerDirection::down, TowerMap::norm).code()];
  CHECK(fibre[0] == 0);
  CHECK(fibre[1] == 4);
  CHECK(fibre[2] == 4);
}

TEST_CASE("norm is multiplicative and trace additive") {
  for (auto [p, kb, ks] : std::vector<std::tuple<int, int, int>>{{3, 2, 1}, {3, 4, 2}, {5, 2, 1}}) {
    auto big = build_field(p, kb);
    auto small = build_field(p, ks);
    auto N = [&](FieldCode a) {
      return norm_trace_embed(FieldElement(big.get(), a), *small, TowerDirection::down, TowerMap::norm);
    };
    auto T = [&](FieldCode a) {
      return norm_trace_embed(FieldElement(big.get(), a), *small, TowerDirection::down, TowerMap::trace);
    };
    for (FieldCode a = 0; a < big->order(); ++a)
      for (FieldCode b = 0; b < big->order(); ++b) {
        REQUIRE(N(big->mul(a, b)) == N(a) * N(b));
        REQUIRE(T(big->add(a, b)) == T(a) + T(b));
      }
  }
}

TEST_CASE("embeddings compose along the tower F_3 -> F_9 -> F_81") {
  auto f3 = build_field(3, 1), f9 = build_field(3, 2), f81 = build_field(3, 4);
  std::set<FieldCode> image;
  for (FieldCode a = 0; a < f9->order(); ++a) {
    const FieldElement x(f9.get(), a);
    const auto up = norm_trace_embed(x, *f81, TowerDirection::up, TowerMap::embed);
    image.insert(up.code());
    // The image is fixed by x -> x^9.
    CHECK(frobenius(up, 9) == up);
  }
  CHECK(image.size() == 9);
  for (FieldCode a = 0; a < f3->order(); ++a) {
    const FieldElement x(f3.get(), a);
    const auto two_step = norm_trace_embed(norm_trace_embed(x, *f9, TowerDirection::up, TowerMap::embed), *f81,
                                           TowerDirection::up, TowerMap::embed);
    CHECK(two_step == norm_trace_embed(x, *f81, TowerDirection::up, TowerMap::embed));
  }
  // Embedding is a ring map.
  for (FieldCode a = 0; a < f9->order(); ++a)
    for (FieldCode b = 0; b < f9->order(); ++b) {
      auto e = [&](FieldCode c) {
        return norm_trace_embed(FieldElement(f9.get(), c), *f81, TowerDirection::up, TowerMap::embed);
      };
      REQUIRE(e(f9->mul(a, b)) == e(a) * e(b));
      REQUIRE(e(f9->add(a, b)) == e(a) + e(b));
    }
}

TEST_CASE("tower errors") {
  auto f9 = build_field(3, 2), f25 = build_field(5, 2), f27 = build_field(3, 3);
  const FieldElement x(f9.get(), f9->generator());
  CHECK_THROWS_AS(norm_trace_embed(x, *f25, TowerDirection::down, TowerMap::norm), Error);
  CHECK_THROWS_AS(norm_trace_embed(x, *f27, TowerDirection::up, TowerMap::embed), Error);
  CHECK_THROWS_AS(norm_trace_embed(x, *f9, TowerDirection::down, TowerMap::embed), Error);
}

TEST_CASE("build_field rejects bad input") {
  CHECK_THROWS_AS(build_field(2, 1), Error);
  CHECK_THROWS_AS(build_field(9, 1), Error);
  CHECK_THROWS_AS(build_field(3, 0), Error);
  CHECK_THROWS_AS(build_field(3, 40), Error);
  CHECK_NOTHROW(build_field(3, 8));
}

TEST_CASE("absolute trace and non-squares") {
  auto f = build_field(3, 2);
  for (FieldCode a = 0; a < f->order(); ++a) {
    std::uint32_t t = 0;
    FieldCode x = a, s = 0;
    for (int i = 0; i < 2; ++i, x = f->pow(x, 3)) s = f->add(s, x);
    t = f->prime_value(s);
    CHECK(absolute_trace(*f, a) == t);
  }
  const FieldCode z = smallest_nonsquare(*f, 9);
  CHECK_FALSE(f->is_square(z));
  CHECK(z == f->generator());
  int squares = 0;
  for (FieldCode a = 1; a < f->order(); ++a) squares += f->is_square(a);
  CHECK(squares == 4);
}
