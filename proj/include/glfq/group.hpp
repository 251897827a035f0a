#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "glfq/ff.hpp"
#include "glfq/matrix.hpp"

namespace glfq {

/// Default cap on |G| for explicit enumeration.
inline constexpr std::uint64_t kDefaultEnumerationBound = 30'000'000;

/// GL_n(F_{q^m}) with base field order q (m in {1, 2}).
struct GroupSpec {
  int n = 1;
  std::uint64_t q = 3;
  int m = 1;

  std::uint64_t element_field_order() const { return ipow(q, static_cast<unsigned>(m)); }
  /// Throws Error unless q is an odd prime power, m in {1,2} and 1 <= n <= kMaxDim.
  void validate() const;
  std::string describe() const;
  bool operator==(const GroupSpec&) const = default;
};

/// Element field F_{q^m} of a spec.
FieldPtr element_field(const GroupSpec& spec);

/// prod_{i<n} (Q^n - Q^i) with Q = q^m. Throws BoundError on overflow.
std::uint64_t group_order(const GroupSpec& spec);

/// |GL_n(F_Q)| for a raw field order Q.
std::uint64_t gl_order(int n, std::uint64_t Q);

/// Every invertible matrix exactly once, in increasing Matrix::encode order.
std::vector<Matrix> enumerate_elements(const GroupSpec& spec,
                                       std::uint64_t bound = kDefaultEnumerationBound);

/// An explicitly enumerated GL_n(F_Q). Elements are addressed by their
/// position in the enumeration order.
class Group {
 public:
  Group(const GroupSpec& spec, std::uint64_t bound = kDefaultEnumerationBound);

  const GroupSpec& spec() const { return spec_; }
  const Field& field() const { return *field_; }
  FieldPtr field_ptr() const { return field_; }
  int dim() const { return spec_.n; }
  std::size_t order() const { return elements_.size(); }
  const Matrix& element(std::int32_t i) const { return elements_[i]; }
  const std::vector<Matrix>& elements() const { return elements_; }

  /// Enumeration index of an invertible matrix; -1 if singular or foreign.
  std::int32_t index_of(const Matrix& m) const;
  std::int32_t identity_index() const { return identity_; }
  std::int32_t inverse_index(std::int32_t i) const { return inverse_[i]; }
  std::int32_t multiply(std::int32_t a, std::int32_t b) const;
  /// a * b * a^-1.
  std::int32_t conjugate(std::int32_t a, std::int32_t b) const;

 private:
  GroupSpec spec_;
  FieldPtr field_;
  std::vector<Matrix> elements_;
  std::vector<std::int32_t> dense_index_;
  std::unordered_map<std::uint64_t, std::int32_t> sparse_index_;
  std::vector<std::int32_t> inverse_;
  std::int32_t identity_ = -1;
};

using GroupPtr = std::shared_ptr<const Group>;

/// Ordered composition (n_1, ..., n_k) of n into positive block sizes.
struct Composition {
  std::vector<int> parts;

  int total() const;
  int blocks() const { return static_cast<int>(parts.size()); }
  /// Block label of each index, 0-based and non-decreasing.
  std::vector<int> labeling() const;
  /// Throws Error for a labeling that is not non-decreasing with consecutive labels from 1.
  static Composition from_labeling(const std::vector<int>& f);
  std::string to_string() const;
  bool operator==(const Composition&) const = default;
};

/// All compositions of n, in lexicographic order of parts.
std::vector<Composition> compositions(int n);

/// Explicit subgroup of an enumerated GL_n: sorted element indices and a
/// membership predicate descriptor.
struct SubgroupData {
  GroupPtr parent;
  std::string descriptor;
  std::vector<std::int32_t> elements;

  std::size_t order() const { return elements.size(); }
  bool contains(std::int32_t g) const;
};

/// Subgroup of elements satisfying pred.
SubgroupData subgroup_by_predicate(GroupPtr g, std::string descriptor,
                                   const std::function<bool(const Matrix&)>& pred);

/// True when the element list is closed under products and inverses and contains 1.
bool is_closed_subgroup(const SubgroupData& h);

/// A small generating set, extracted greedily in element order.
std::vector<std::int32_t> generators(const SubgroupData& h);

struct StandardSubgroups {
  SubgroupData parabolic;
  SubgroupData levi;
  SubgroupData unipotent;
};

/// Standard parabolic P (block upper triangular), its Levi L (block diagonal)
/// and unipotent radical U (block upper unitriangular) for the composition.
StandardSubgroups standard_subgroups(GroupPtr g, const Composition& f);

bool in_parabolic(const Matrix& m, const Composition& f);
bool in_levi(const Matrix& m, const Composition& f);

/// The diagonal block of index b.
Matrix levi_block(const Matrix& m, const Composition& f, int b);

struct DoubleCoset {
  std::int32_t representative;  // minimal element index in the coset
  std::uint64_t size;
};

/// A\G/B double cosets in order of their minimal elements; sizes sum to |G|.
std::vector<DoubleCoset> double_cosets(const SubgroupData& a, const SubgroupData& b);

/// Elements of the double coset A g B, sorted.
std::vector<std::int32_t> double_coset_elements(const SubgroupData& a, std::int32_t g,
                                                const SubgroupData& b);

/// Representatives of the left cosets g P, minimal element of each, sorted.
std::vector<std::int32_t> left_coset_representatives(const SubgroupData& p);

}  // namespace glfq
