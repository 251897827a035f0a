#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace glfq {

/// Raised for every invalid argument or precondition failure in the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation would exceed a documented size bound.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// Largest field order accepted by build_field (3^10 = 59049 fits).
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

/// Element code inside a Field: 0 is zero, otherwise 1 + discrete log with
/// respect to the field's fixed generator. Codes are the "field indices"
/// used in every serialized matrix.
using FieldCode = std::uint16_t;

class Field;

/// A finite field F_{p^k}, p odd, tabulated by Zech logarithms.
///
/// The modulus is the lexicographically smallest monic irreducible of degree k
/// (coefficients compared from the constant term upwards) and the generator is
/// the primitive element with the smallest polynomial encoding
/// sum_i c_i p^i. Both are deterministic functions of (p, k).
class Field {
 public:
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t order() const { return order_; }
  /// Monic modulus, coefficients c_0 .. c_k.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  /// Polynomial encoding of the fixed generator.
  std::uint32_t generator_poly() const { return poly_of_log_[1 % (order_ - 1)]; }

  FieldCode zero() const { return 0; }
  FieldCode one() const { return 1; }
  FieldCode generator() const { return order_ == 2 ? 1 : 2; }

  FieldCode add(FieldCode a, FieldCode b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t n = order_ - 1;
    const std::uint32_t la = a - 1u;
    const std::uint32_t d = (b - 1u + n - la) % n;
    const std::int32_t z = zech_[d];
    if (z < 0) return 0;
    return static_cast<FieldCode>(1 + (la + static_cast<std::uint32_t>(z)) % n);
  }
  FieldCode neg(FieldCode a) const {
    if (a == 0) return 0;
    const std::uint32_t n = order_ - 1;
    return static_cast<FieldCode>(1 + (a - 1u + n / 2) % n);
  }
  FieldCode sub(FieldCode a, FieldCode b) const { return add(a, neg(b)); }
  FieldCode mul(FieldCode a, FieldCode b) const {
    if (a == 0 || b == 0) return 0;
    return static_cast<FieldCode>(1 + (a - 1u + b - 1u) % (order_ - 1));
  }
  FieldCode inv(FieldCode a) const {
    if (a == 0) throw Error("inverse of zero");
    const std::uint32_t n = order_ - 1;
    return static_cast<FieldCode>(1 + (n - (a - 1u)) % n);
  }
  FieldCode pow(FieldCode a, std::int64_t e) const;
  /// Multiplicative order of a nonzero element.
  std::uint32_t element_order(FieldCode a) const;
  bool is_square(FieldCode a) const { return a == 0 || ((a - 1u) % 2 == 0); }

  /// Discrete log of a nonzero element.
  std::uint32_t log(FieldCode a) const {
    if (a == 0) throw Error("log of zero");
    return a - 1u;
  }
  FieldCode from_log(std::int64_t l) const {
    const std::int64_t n = order_ - 1;
    return static_cast<FieldCode>(1 + ((l % n) + n) % n);
  }
  /// Conversion between codes and polynomial encodings sum_i c_i p^i.
  std::uint32_t to_poly(FieldCode a) const { return a == 0 ? 0 : poly_of_log_[a - 1u]; }
  FieldCode from_poly(std::uint32_t poly) const { return code_of_poly_.at(poly); }
  /// Image of the integer v (mod p) in the prime subfield.
  FieldCode from_int(std::int64_t v) const;
  /// Integer value in [0, p) of a prime-subfield element.
  std::uint32_t prime_value(FieldCode a) const;

  /// "GF(p^k; modulus=[c0,...,ck])".
  std::string describe() const;

  bool same_as(const Field& other) const { return p_ == other.p_ && k_ == other.k_; }

 private:
  friend std::shared_ptr<const Field> build_field(std::uint32_t, std::uint32_t);
  Field() = default;

  std::uint32_t p_ = 0;
  std::uint32_t k_ = 0;
  std::uint32_t order_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> poly_of_log_;
  std::vector<FieldCode> code_of_poly_;
  std::vector<std::int32_t> zech_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Builds F_{p^k}. Throws Error for even or composite p or k < 1, BoundError if
/// p^k exceeds kMaxFieldOrder. Results are memoized.
FieldPtr build_field(std::uint32_t p, std::uint32_t k);

/// Value type wrapper around a code; arithmetic requires matching fields.
class FieldElement {
 public:
  FieldElement(const Field* field, FieldCode code) : field_(field), code_(code) {}
  const Field& field() const { return *field_; }
  FieldCode code() const { return code_; }
  bool is_zero() const { return code_ == 0; }

  FieldElement operator+(const FieldElement& o) const { return {field_, field_->add(code_, check(o))}; }
  FieldElement operator-(const FieldElement& o) const { return {field_, field_->sub(code_, check(o))}; }
  FieldElement operator*(const FieldElement& o) const { return {field_, field_->mul(code_, check(o))}; }
  FieldElement operator-() const { return {field_, field_->neg(code_)}; }
  FieldElement inverse() const { return {field_, field_->inv(code_)}; }
  bool operator==(const FieldElement& o) const { return field_->same_as(*o.field_) && code_ == o.code_; }

 private:
  FieldCode check(const FieldElement& o) const {
    if (!field_->same_as(*o.field_)) throw Error("field mismatch");
    return o.code_;
  }
  const Field* field_;
  FieldCode code_;
};

/// x -> x^q where q = p^e is the order of a subfield (e | k).
FieldElement frobenius(const FieldElement& x, std::uint64_t q);

enum class TowerDirection { down, up };
enum class TowerMap { norm, trace, embed };

/// Norm, trace (down to a subfield) or embedding (up to an overfield).
/// Norm and trace land in the subfield `target`; embed maps into the
/// overfield `target`. Throws Error if the fields are not in a tower relation
/// or the (direction, kind) pair is meaningless (down+embed, up+norm/trace).
FieldElement norm_trace_embed(const FieldElement& x, const Field& target, TowerDirection direction,
                              TowerMap kind);

/// Code of the image of the generator of `sub` in `over`. The image is the
/// root of the generator's minimal polynomial of smallest discrete log, with
/// g^((|over|-1)/(|sub|-1)) preferred when it is itself a root.
FieldCode embedding_generator_image(const Field& sub, const Field& over);

/// Embeds a code of `sub` into `over`.
FieldCode embed_code(const Field& sub, const Field& over, FieldCode c);

/// Absolute trace to F_p as an integer in [0, p).
std::uint32_t absolute_trace(const Field& f, FieldCode c);

/// First non-square of the subfield of the given order in generator-power
/// order, i.e. that subfield's generator. Used for the E-form involution.
FieldCode smallest_nonsquare(const Field& f, std::uint64_t subfield_order);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace glfq
