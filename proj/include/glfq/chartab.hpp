#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "glfq/classes.hpp"
#include "glfq/cyclotomic.hpp"

namespace glfq {

/// A class function: one cyclotomic value per class of a ClassStructure.
class ClassFunction {
 public:
  ClassFunction() = default;
  ClassFunction(ClassStructurePtr structure, std::vector<Cyclotomic> values);
  /// Constant function.
  static ClassFunction constant(ClassStructurePtr structure, const Cyclotomic& value);
  static ClassFunction zero(ClassStructurePtr structure) { return constant(std::move(structure), Cyclotomic()); }

  const ClassStructure& structure() const { return *structure_; }
  ClassStructurePtr structure_ptr() const { return structure_; }
  std::size_t size() const { return values_.size(); }
  const Cyclotomic& operator[](std::size_t c) const { return values_[c]; }
  const std::vector<Cyclotomic>& values() const { return values_; }
  /// Value at the identity class.
  const Cyclotomic& degree() const { return values_[0]; }
  bool is_zero() const;

  ClassFunction operator+(const ClassFunction& o) const;
  ClassFunction operator-(const ClassFunction& o) const;
  ClassFunction operator*(const ClassFunction& o) const;  // pointwise
  ClassFunction scaled(const Cyclotomic& c) const;
  ClassFunction conj() const;
  bool operator==(const ClassFunction& o) const;
  bool operator!=(const ClassFunction& o) const { return !(*this == o); }

 private:
  void require_same(const ClassFunction& o) const;
  ClassStructurePtr structure_;
  std::vector<Cyclotomic> values_;
};

/// (1/|G|) sum_c |c| a(c) conj(b(c)).
Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b);

/// Irreducible characters ordered by degree, then by Cyclotomic::compare on
/// the value sequence.
class CharacterTable {
 public:
  CharacterTable(ClassStructurePtr structure, std::vector<ClassFunction> irreducibles);

  const ClassStructure& structure() const { return *structure_; }
  ClassStructurePtr structure_ptr() const { return structure_; }
  std::size_t size() const { return irreducibles_.size(); }
  const ClassFunction& operator[](std::size_t i) const { return irreducibles_[i]; }
  const std::vector<ClassFunction>& irreducibles() const { return irreducibles_; }
  std::int64_t degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<std::int64_t>& degrees() const { return degrees_; }
  /// Index of the trivial character.
  std::size_t trivial_index() const;
  /// Index of an irreducible equal to chi, or -1.
  std::int64_t index_of(const ClassFunction& chi) const;

  /// Multiplicities <chi, chi_i>. Throws Error if one is not an integer.
  std::vector<std::int64_t> decompose(const ClassFunction& chi) const;

  /// Exact check of both orthogonality relations, the class count and
  /// sum of squared degrees. Returns an empty string on success, otherwise a
  /// description of the first failure.
  std::string verify() const;

  /// One row per irreducible: char_index,degree,"value_0",... with values in
  /// Cyclotomic::to_string form.
  std::string to_csv() const;
  /// Parses to_csv output against a class structure (no sorting applied).
  static CharacterTable from_csv(ClassStructurePtr structure, const std::string& csv);

 private:
  ClassStructurePtr structure_;
  std::vector<ClassFunction> irreducibles_;
  std::vector<std::int64_t> degrees_;
};

using CharacterTablePtr = std::shared_ptr<const CharacterTable>;

/// Smallest prime l = 1 (mod exponent) with l^2 > 4|G|.
std::uint64_t dixon_prime(std::uint64_t group_order, std::uint64_t exponent);

/// Dixon-Schneider: common eigenvectors of the class matrices modulo the
/// Dixon prime, split in ascending class order, lifted by a discrete
/// Fourier transform over each class's power map.
CharacterTable character_table(ClassStructurePtr structure);

/// Value at a class of `sub` is chi at the class of its representative.
/// Both structures must share the ambient group.
ClassFunction restrict(const ClassFunction& chi, ClassStructurePtr sub);

/// Product character on a Levi from one class function per block.
ClassFunction external_tensor(const Levi& levi, const std::vector<ClassFunction>& factors);

/// All external tensors of factor irreducibles, mixed-radix order (first
/// block most significant). Not re-sorted.
CharacterTable levi_character_table(const Levi& levi, const std::vector<CharacterTablePtr>& factors);

}  // namespace glfq
