#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "glfq/ff.hpp"

namespace glfq {

/// Matrices are stored inline; groups in scope never exceed this dimension.
inline constexpr int kMaxDim = 4;

/// Square matrix over a tabulated finite field, entries held as field codes.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field* field, int n) : field_(field), n_(n) {
    if (n < 1 || n > kMaxDim) throw Error("matrix dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    a_.fill(0);
  }
  static Matrix identity(const Field* field, int n);
  /// Scalar multiple of the identity.
  static Matrix scalar(const Field* field, int n, FieldCode c);
  /// Diagonal matrix from codes.
  static Matrix diagonal(const Field* field, const std::vector<FieldCode>& d);
  /// Row-major codes.
  static Matrix from_codes(const Field* field, int n, const std::vector<FieldCode>& codes);

  int dim() const { return n_; }
  const Field& field() const { return *field_; }
  const Field* field_ptr() const { return field_; }
  FieldCode operator()(int i, int j) const { return a_[i * kMaxDim + j]; }
  FieldCode& operator()(int i, int j) { return a_[i * kMaxDim + j]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const;
  /// Entrywise x -> x^q.
  Matrix frobenius(std::uint64_t q) const;
  FieldCode determinant() const;
  bool invertible() const { return determinant() != 0; }
  /// Throws Error on singular input.
  Matrix inverse() const;
  int rank() const;
  Matrix scaled(FieldCode c) const;
  bool is_identity() const;
  /// Scalar multiple of the identity.
  bool is_scalar() const;
  /// Exactly one nonzero entry in every row and column.
  bool is_monomial() const;

  /// Base-|F| integer of the row-major codes, entry (0,0) most significant.
  std::uint64_t encode() const;
  static Matrix decode(const Field* field, int n, std::uint64_t code);
  std::vector<FieldCode> codes() const;

  /// Rows separated by ';', entries by spaces, as decimal field codes.
  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  int n_ = 0;
  std::array<FieldCode, kMaxDim * kMaxDim> a_{};
};

/// Polynomials over a field, low-to-high coefficient codes, trimmed.
using FieldPoly = std::vector<FieldCode>;

FieldPoly characteristic_polynomial(const Matrix& m);
/// p(m) by Horner.
Matrix evaluate_polynomial(const FieldPoly& p, const Matrix& m);

/// Polynomial helpers shared by the class-label code.
FieldPoly poly_mul(const Field& f, const FieldPoly& a, const FieldPoly& b);
/// Returns quotient, writes remainder; divisor must be monic.
FieldPoly poly_divmod(const Field& f, const FieldPoly& a, const FieldPoly& b, FieldPoly& rem);

}  // namespace glfq
