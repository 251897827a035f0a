#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "glfq/cyclotomic.hpp"

using namespace glfq;

namespace {

using C = std::complex<double>;

C numeric(const Cyclotomic& z) {
  auto [re, im] = z.approx();
  return {re, im};
}

C root(std::int64_t e, std::int64_t k) {
  const double a = 2 * M_PI * static_cast<double>(k) / static_cast<double>(e);
  return {std::cos(a), std::sin(a)};
}

}  // namespace

TEST_CASE("basic identities") {
  const Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
  CHECK(i * i == Cyclotomic(-1));
  const Cyclotomic w = Cyclotomic::root_of_unity(3, 1);
  CHECK((Cyclotomic(1) + w + w * w).is_zero());
  CHECK(Cyclotomic::root_of_unity(8, 1).conj() == Cyclotomic::root_of_unity(8, 7));
  CHECK(Cyclotomic::root_of_unity(6, 3) == Cyclotomic(-1));
  CHECK(Cyclotomic::root_of_unity(5, 5) == Cyclotomic(1));
}

TEST_CASE("conductor is minimized") {
  const Cyclotomic z = Cyclotomic::root_of_unity(12, 4);  // primitive cube root
  CHECK(z.conductor() == 3);
  CHECK((Cyclotomic::root_of_unity(8, 1) * Cyclotomic::root_of_unity(8, 1)).conductor() == 4);
  CHECK(Cyclotomic(Rational(3, 2)).is_rational());
  CHECK(Cyclotomic(Rational(3, 2)).rational() == Rational(3, 2));
  // sqrt(-3) = 2 zeta_3 + 1 has conductor 3; sqrt(5) lives at conductor 5.
  const Cyclotomic s = Cyclotomic::root_of_unity(3, 1) * Cyclotomic(2) + Cyclotomic(1);
  CHECK(s * s == Cyclotomic(-3));
  const Cyclotomic z5 = Cyclotomic::root_of_unity(5, 1);
  const Cyclotomic sqrt5 = z5 - z5 * z5 - z5 * z5 * z5 + z5 * z5 * z5 * z5;
  CHECK(sqrt5 * sqrt5 == Cyclotomic(5));
  CHECK(sqrt5.conductor() == 5);
}

TEST_CASE("arithmetic agrees with complex numbers") {
  std::mt19937_64 rng(7);
  const std::vector<std::int64_t> conductors = {1, 3, 4, 5, 8, 9, 12, 15, 24, 80};
  auto random_element = [&]() {
    Cyclotomic z;
    C v = 0;
    for (int t = 0; t < 4; ++t) {
      const auto e = conductors[rng() % conductors.size()];
      const auto k = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(e));
      const auto c = static_cast<std::int64_t>(rng() % 7) - 3;
      z += Cyclotomic::root_of_unity(e, k) * Cyclotomic(c);
      v += static_cast<double>(c) * root(e, k);
    }
    return std::pair{z, v};
  };
  for (int trial = 0; trial < 300; ++trial) {
    auto [a, va] = random_element();
    auto [b, vb] = random_element();
    REQUIRE(std::abs(numeric(a) - va) < 1e-9);
    REQUIRE(std::abs(numeric(a + b) - (va + vb)) < 1e-9);
    REQUIRE(std::abs(numeric(a * b) - va * vb) < 1e-8);
    REQUIRE(std::abs(numeric(a.conj()) - std::conj(va)) < 1e-9);
    REQUIRE(a.conj().conj() == a);
    // Equality is syntactic: the difference with itself rebuilt from parts is zero.
    REQUIRE((a - a).is_zero());
    REQUIRE((std::abs(va - vb) > 1e-9) == (a != b));
    // z * conj(z) is a nonnegative real.
    const Cyclotomic n = a * a.conj();
    REQUIRE(std::abs(numeric(n).imag()) < 1e-9);
    REQUIRE(numeric(n).real() > -1e-9);
  }
}

TEST_CASE("galois action") {
  const Cyclotomic z = Cyclotomic::root_of_unity(8, 1);
  CHECK(z.galois(3) == Cyclotomic::root_of_unity(8, 3));
  CHECK(z.galois(7) == z.conj());
  const Cyclotomic sum = z + z.galois(3) + z.galois(5) + z.galois(7);
  CHECK(sum.is_zero());
}

TEST_CASE("string round trip") {
  const Cyclotomic z = Cyclotomic::root_of_unity(8, 1) * Cyclotomic(Rational(-3, 2)) + Cyclotomic(2);
  CHECK(Cyclotomic::parse(z.to_string()) == z);
  CHECK(Cyclotomic(0).to_string() == "0");
  CHECK(Cyclotomic(-4).to_string() == "-4");
  CHECK(Cyclotomic::root_of_unity(3, 1).to_string() == "1*E(3,1)");
  for (std::int64_t e : {5, 7, 9, 16, 24})
    for (std::int64_t k = 0; k < e; ++k) {
      const Cyclotomic w = Cyclotomic::root_of_unity(e, k) * Cyclotomic(Rational(k + 1, 3)) + Cyclotomic(k);
      REQUIRE(Cyclotomic::parse(w.to_string()) == w);
    }
  CHECK_THROWS(Cyclotomic::parse("1*E(3"));
}

TEST_CASE("division and integer extraction") {
  const Cyclotomic z = Cyclotomic(6) / Rational(3);
  CHECK(z.integer() == 2);
  CHECK_THROWS(Cyclotomic::root_of_unity(4, 1).integer());
  CHECK_THROWS(Cyclotomic(Rational(1, 2)).integer());
}

TEST_CASE("compare is a total order") {
  std::vector<Cyclotomic> v = {Cyclotomic(1), Cyclotomic(-1), Cyclotomic::root_of_unity(3, 1),
                               Cyclotomic::root_of_unity(3, 2), Cyclotomic::root_of_unity(4, 1), Cyclotomic(0)};
  for (const auto& a : v) {
    CHECK(Cyclotomic::compare(a, a) == 0);
    for (const auto& b : v)
      if (a != b) CHECK(Cyclotomic::compare(a, b) == -Cyclotomic::compare(b, a));
  }
}
