#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "glfq/group.hpp"

namespace glfq {

/// Conjugacy classes of a finite group living inside an enumerated GL_n.
/// Elements are addressed by ambient (parent) enumeration index.
///
/// Classes are ordered by (size, minimal representative), so class 0 is the
/// identity.
struct ClassStructure {
  GroupPtr ambient;
  std::string name;
  std::vector<std::int32_t> members;         // sorted ambient indices
  std::vector<std::int32_t> class_of;        // ambient index -> class, -1 outside
  std::vector<std::int32_t> representatives; // minimal ambient index per class
  std::vector<std::uint64_t> sizes;
  std::vector<std::int32_t> inverse_class;
  std::vector<std::int32_t> element_order;
  /// power_class[c][t] = class of rep_c^t for t < element_order[c].
  std::vector<std::vector<std::int32_t>> power_class;

  std::size_t class_count() const { return sizes.size(); }
  std::uint64_t order() const { return members.size(); }
  std::int32_t class_of_element(std::int32_t ambient_index) const;
  std::int32_t class_of_matrix(const Matrix& m) const;
  /// lcm of element orders.
  std::uint64_t exponent() const;
};

using ClassStructurePtr = std::shared_ptr<const ClassStructure>;

/// Elementary-divisor label of a GL_n class: for every monic irreducible
/// factor of the characteristic polynomial, its partition (Jordan block
/// sizes). Sorted by polynomial.
struct ClassLabel {
  std::vector<std::pair<FieldPoly, std::vector<int>>> parts;

  bool operator==(const ClassLabel&) const = default;
  bool operator<(const ClassLabel& o) const { return parts < o.parts; }
  /// e.g. "p(2 1)^[1]*p(1 0 1)^[1]"; polynomial coefficients low-to-high as field codes.
  std::string to_string() const;
};

ClassLabel class_label(const Matrix& g);

/// Monic irreducible polynomials of the given degree over f, in
/// lexicographic order of codes (constant term first).
std::vector<FieldPoly> monic_irreducibles(const Field& f, int degree);

/// Centralizer order in GL_n(F_Q) of an element with this label.
std::uint64_t centralizer_order_from_label(const ClassLabel& label, std::uint64_t Q);

/// Conjugacy classes of GL_n(F_Q) computed from elementary-divisor labels.
class ConjClassTable {
 public:
  explicit ConjClassTable(GroupPtr group);

  const Group& group() const { return *group_; }
  GroupPtr group_ptr() const { return group_; }
  ClassStructurePtr structure() const { return structure_; }
  std::size_t class_count() const { return structure_->class_count(); }
  const std::vector<ClassLabel>& labels() const { return labels_; }
  const std::vector<std::uint64_t>& centralizer_orders() const { return centralizers_; }
  const Matrix& representative(std::size_t c) const { return group_->element(structure_->representatives[c]); }

  /// Class of any invertible matrix of the right shape; computed from its
  /// label, not from the enumeration. Throws Error on singular input.
  std::int32_t class_of(const Matrix& g) const;
  std::int32_t class_of_index(std::int32_t i) const { return structure_->class_of[i]; }

  /// CSV: class_index,label,size,centralizer_order,representative
  std::string to_csv() const;

 private:
  GroupPtr group_;
  ClassStructurePtr structure_;
  std::vector<ClassLabel> labels_;
  std::vector<std::uint64_t> centralizers_;
  std::map<ClassLabel, std::int32_t> by_label_;
};

using ConjClassTablePtr = std::shared_ptr<const ConjClassTable>;

/// Builds the GL_n class table for a spec.
ConjClassTablePtr conjugacy_classes(const GroupSpec& spec, std::uint64_t bound = kDefaultEnumerationBound);

/// Brute-force orbit partition of a subgroup under its own conjugation
/// action. Independent of the label machinery.
ClassStructurePtr orbit_classes(const SubgroupData& h);

/// Standard Levi GL_{n_1} x ... x GL_{n_k} inside GL_n. Classes are indexed
/// mixed-radix by factor classes, first block most significant.
class Levi {
 public:
  Levi(GroupPtr ambient, Composition f, std::vector<ConjClassTablePtr> factors);

  const Composition& composition() const { return f_; }
  ClassStructurePtr structure() const { return structure_; }
  const ConjClassTable& factor(int b) const { return *factors_[b]; }
  int blocks() const { return f_.blocks(); }
  std::vector<std::int32_t> split(std::int32_t levi_class) const;
  std::int32_t combine(const std::vector<std::int32_t>& factor_classes) const;
  /// Class of a block-diagonal matrix.
  std::int32_t class_of_matrix(const Matrix& m) const;

 private:
  GroupPtr ambient_;
  Composition f_;
  std::vector<ConjClassTablePtr> factors_;
  ClassStructurePtr structure_;
};

using LeviPtr = std::shared_ptr<const Levi>;

}  // namespace glfq
