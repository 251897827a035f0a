#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace glfq {

using Rational = boost::rational<std::int64_t>;

/// Element of Q(zeta_N) kept in canonical form.
///
/// The basis of Q(zeta_N) is the tensor product, over prime powers q || N, of
/// the power bases {zeta_q^j : j < phi(q)}, where zeta_q = zeta_N^(N/q). A
/// basis element is stored as its exponent of zeta_N. After every operation
/// the conductor is lowered to the smallest N containing the value, so two
/// values are equal exactly when their representations are.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(std::int64_t v) : Cyclotomic(Rational(v)) {}  // NOLINT(implicit)
  Cyclotomic(Rational v);                                 // NOLINT(implicit)

  /// zeta_e^k.
  static Cyclotomic root_of_unity(std::int64_t e, std::int64_t k);
  /// sum_k coeffs[k] zeta_e^k.
  static Cyclotomic from_powers(std::int64_t e, const std::vector<Rational>& coeffs);

  std::int64_t conductor() const { return conductor_; }
  /// (exponent, coefficient) pairs, exponents ascending, all nonzero.
  const std::vector<std::pair<std::int64_t, Rational>>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return conductor_ == 1; }
  /// Throws glfq::Error unless rational.
  Rational rational() const;
  /// Throws glfq::Error unless an integer.
  std::int64_t integer() const;

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic operator/(const Rational& r) const;
  /// Complex conjugation.
  Cyclotomic conj() const;
  /// Galois action zeta -> zeta^k, gcd(k, N) = 1.
  Cyclotomic galois(std::int64_t k) const;

  bool operator==(const Cyclotomic& o) const { return conductor_ == o.conductor_ && terms_ == o.terms_; }
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }
  /// Total order used for sorting characters: conductor ascending, then the
  /// coefficient sequence over exponents 0..N-1 with larger coefficients first.
  static int compare(const Cyclotomic& a, const Cyclotomic& b);

  /// "c*E(N,j)" terms joined by '+' (negative coefficients carry their sign); a rational prints as "c"; "0" for zero.
  std::string to_string() const;
  static Cyclotomic parse(const std::string& s);

  /// Value at zeta_N = exp(2 pi i / N), for diagnostics only.
  std::pair<double, double> approx() const;

 private:
  // Builds from arbitrary (exponent, coeff) pairs at conductor N; reduces.
  static Cyclotomic reduce(std::int64_t N, const std::vector<std::pair<std::int64_t, Rational>>& raw);
  // Re-expresses at conductor M, a multiple of conductor_ (not reduced).
  std::vector<std::pair<std::int64_t, Rational>> lifted(std::int64_t M) const;

  std::int64_t conductor_ = 1;
  std::vector<std::pair<std::int64_t, Rational>> terms_;
};

}  // namespace glfq
