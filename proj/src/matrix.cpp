#include "glfq/matrix.hpp"

#include <sstream>
#include <utility>

namespace glfq {

Matrix Matrix::identity(const Field* field, int n) { return scalar(field, n, field->one()); }

Matrix Matrix::scalar(const Field* field, int n, FieldCode c) {
  Matrix m(field, n);
  for (int i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

Matrix Matrix::diagonal(const Field* field, const std::vector<FieldCode>& d) {
  Matrix m(field, static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

Matrix Matrix::from_codes(const Field* field, int n, const std::vector<FieldCode>& codes) {
  if (codes.size() != static_cast<std::size_t>(n * n)) throw Error("wrong number of matrix entries");
  Matrix m(field, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const FieldCode c = codes[i * n + j];
      if (c >= field->order()) throw Error("field code out of range: " + std::to_string(c));
      m(i, j) = c;
    }
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  const Field& f = *field_;
  Matrix r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const FieldCode a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < n_; ++j) r(i, j) = f.add(r(i, j), f.mul(a, o(k, j)));
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = field_->add((*this)(i, j), o(i, j));
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = field_->sub((*this)(i, j), o(i, j));
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (n_ != o.n_) return false;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if ((*this)(i, j) != o(i, j)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Matrix Matrix::frobenius(std::uint64_t q) const {
  Matrix r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = field_->pow((*this)(i, j), static_cast<std::int64_t>(q));
  return r;
}

Matrix Matrix::scaled(FieldCode c) const {
  Matrix r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = field_->mul((*this)(i, j), c);
  return r;
}

FieldCode Matrix::determinant() const {
  const Field& f = *field_;
  if (n_ == 1) return a_[0];
  if (n_ == 2) return f.sub(f.mul((*this)(0, 0), (*this)(1, 1)), f.mul((*this)(0, 1), (*this)(1, 0)));
  Matrix m = *this;
  FieldCode det = f.one();
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int r = c; r < n_; ++r)
      if (m(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n_; ++j) std::swap(m(piv, j), m(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(c, c));
    const FieldCode inv = f.inv(m(c, c));
    for (int r = c + 1; r < n_; ++r) {
      if (m(r, c) == 0) continue;
      const FieldCode factor = f.mul(m(r, c), inv);
      for (int j = c; j < n_; ++j) m(r, j) = f.sub(m(r, j), f.mul(factor, m(c, j)));
    }
  }
  return det;
}

Matrix Matrix::inverse() const {
  const Field& f = *field_;
  Matrix m = *this;
  Matrix inv = identity(field_, n_);
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int r = c; r < n_; ++r)
      if (m(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error("matrix is singular");
    if (piv != c)
      for (int j = 0; j < n_; ++j) {
        std::swap(m(piv, j), m(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    const FieldCode s = f.inv(m(c, c));
    for (int j = 0; j < n_; ++j) {
      m(c, j) = f.mul(m(c, j), s);
      inv(c, j) = f.mul(inv(c, j), s);
    }
    for (int r = 0; r < n_; ++r) {
      if (r == c || m(r, c) == 0) continue;
      const FieldCode factor = m(r, c);
      for (int j = 0; j < n_; ++j) {
        m(r, j) = f.sub(m(r, j), f.mul(factor, m(c, j)));
        inv(r, j) = f.sub(inv(r, j), f.mul(factor, inv(c, j)));
      }
    }
  }
  return inv;
}

int Matrix::rank() const {
  const Field& f = *field_;
  Matrix m = *this;
  int rank = 0;
  for (int c = 0; c < n_ && rank < n_; ++c) {
    int piv = -1;
    for (int r = rank; r < n_; ++r)
      if (m(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < n_; ++j) std::swap(m(piv, j), m(rank, j));
    const FieldCode inv = f.inv(m(rank, c));
    for (int r = rank + 1; r < n_; ++r) {
      if (m(r, c) == 0) continue;
      const FieldCode factor = f.mul(m(r, c), inv);
      for (int j = c; j < n_; ++j) m(r, j) = f.sub(m(r, j), f.mul(factor, m(rank, j)));
    }
    ++rank;
  }
  return rank;
}

bool Matrix::is_identity() const { return is_scalar() && (*this)(0, 0) == field_->one(); }

bool Matrix::is_scalar() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (i != j ? (*this)(i, j) != 0 : (*this)(i, j) != (*this)(0, 0)) return false;
  return (*this)(0, 0) != 0;
}

bool Matrix::is_monomial() const {
  for (int i = 0; i < n_; ++i) {
    int row = 0, col = 0;
    for (int j = 0; j < n_; ++j) {
      row += (*this)(i, j) != 0;
      col += (*this)(j, i) != 0;
    }
    if (row != 1 || col != 1) return false;
  }
  return true;
}

std::uint64_t Matrix::encode() const {
  std::uint64_t code = 0;
  const std::uint64_t q = field_->order();
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) code = code * q + (*this)(i, j);
  return code;
}

Matrix Matrix::decode(const Field* field, int n, std::uint64_t code) {
  Matrix m(field, n);
  const std::uint64_t q = field->order();
  for (int idx = n * n - 1; idx >= 0; --idx) {
    m(idx / n, idx % n) = static_cast<FieldCode>(code % q);
    code /= q;
  }
  return m;
}

std::vector<FieldCode> Matrix::codes() const {
  std::vector<FieldCode> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out.push_back((*this)(i, j));
  return out;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    if (i) os << ';';
    for (int j = 0; j < n_; ++j) os << (j ? " " : "") << (*this)(i, j);
  }
  return os.str();
}

namespace {

void trim(FieldPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

FieldPoly poly_mul(const Field& f, const FieldPoly& a, const FieldPoly& b) {
  if (a.empty() || b.empty()) return {};
  FieldPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  trim(r);
  return r;
}

FieldPoly poly_divmod(const Field& f, const FieldPoly& a, const FieldPoly& b, FieldPoly& rem) {
  if (b.empty() || b.back() != f.one()) throw Error("poly_divmod requires a monic divisor");
  rem = a;
  trim(rem);
  if (rem.size() < b.size()) return {};
  FieldPoly quot(rem.size() - b.size() + 1, 0);
  while (rem.size() >= b.size()) {
    const std::size_t shift = rem.size() - b.size();
    const FieldCode c = rem.back();
    quot[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] = f.sub(rem[shift + i], f.mul(c, b[i]));
    trim(rem);
  }
  return quot;
}

// Determinant of x*I - m over F[x] by cofactor expansion (n <= 4).
FieldPoly characteristic_polynomial(const Matrix& m) {
  const Field& f = m.field();
  const int n = m.dim();
  std::vector<FieldPoly> entry(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FieldPoly p{f.neg(m(i, j))};
      if (i == j) p.push_back(f.one());
      trim(p);
      entry[i * n + j] = p;
    }
  auto add = [&](const FieldPoly& a, const FieldPoly& b, bool negate) {
    FieldPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = negate ? f.sub(r[i], b[i]) : f.add(r[i], b[i]);
    trim(r);
    return r;
  };
  // Recursive expansion over row subsets.
  std::vector<int> cols(n);
  for (int i = 0; i < n; ++i) cols[i] = i;
  auto det = [&](auto&& self, int row, std::vector<int>& avail) -> FieldPoly {
    if (avail.empty()) return FieldPoly{f.one()};
    FieldPoly acc;
    for (std::size_t k = 0; k < avail.size(); ++k) {
      const int c = avail[k];
      if (entry[row * n + c].empty()) continue;
      std::vector<int> rest;
      for (std::size_t t = 0; t < avail.size(); ++t)
        if (t != k) rest.push_back(avail[t]);
      FieldPoly minor = self(self, row + 1, rest);
      acc = add(acc, poly_mul(f, entry[row * n + c], minor), k % 2 == 1);
    }
    return acc;
  };
  return det(det, 0, cols);
}

Matrix evaluate_polynomial(const FieldPoly& p, const Matrix& m) {
  Matrix acc(m.field_ptr(), m.dim());
  const Matrix id = Matrix::identity(m.field_ptr(), m.dim());
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * m + id.scaled(p[i]);
  return acc;
}

}  // namespace glfq
