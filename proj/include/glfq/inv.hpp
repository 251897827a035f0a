#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "glfq/chartab.hpp"
#include "glfq/classes.hpp"
#include "glfq/group.hpp"
#include "glfq/rep.hpp"

namespace glfq {

enum class InvolutionKind { inner, transpose_inverse, frobenius, frobenius_transpose_inverse };

std::string to_string(InvolutionKind kind);
/// Accepts the to_string names. Throws Error otherwise.
InvolutionKind parse_involution_kind(const std::string& s);

/// An involutive automorphism of an enumerated GL_n:
///   inner:                        g -> A g A^-1
///   transpose_inverse:            g -> J g^-t J^-1
///   frobenius:                    g -> Fr(g)              (m = 2, Fr relative to F_q)
///   frobenius_transpose_inverse:  g -> J Fr(g)^-t J^-1    (m = 2)
/// Construction validates the parameter, then checks sigma^2 = id on every
/// element and the homomorphism property (all pairs for |G| <= 10^4,
/// 10^5 seeded random pairs above).
class Involution {
 public:
  Involution(GroupPtr group, InvolutionKind kind, Matrix parameter, std::string name = {});

  const Group& group() const { return *group_; }
  GroupPtr group_ptr() const { return group_; }
  InvolutionKind kind() const { return kind_; }
  const Matrix& parameter() const { return parameter_; }
  const std::string& name() const { return name_; }

  Matrix apply(const Matrix& g) const;
  std::int32_t apply_index(std::int32_t g) const { return image_[g]; }
  /// The part of sigma that is not conjugation: identity, inverse transpose,
  /// Fr, or Fr followed by inverse transpose. sigma(g) = parameter * base(g) *
  /// parameter^-1, with identity parameter for frobenius.
  Matrix base(const Matrix& g) const;
  std::string describe() const;
  nlohmann::json to_json() const;

 private:
  GroupPtr group_;
  InvolutionKind kind_;
  Matrix parameter_;
  Matrix parameter_inverse_;
  std::string name_;
  std::vector<std::int32_t> image_;
};

/// [[0,1],[z,0]] blocks with z the smallest non-square of F_Q (n even).
Matrix e_form(const Field& f, int n);
/// [[0,1],[-1,0]] blocks (n even).
Matrix standard_symplectic_form(const Field& f, int n);
/// diag(1, ..., 1, -1, ..., -1) with k entries -1 at the end.
Matrix split_diagonal(const Field& f, int n, int k);

/// One representative per applicable type for the group's (n, q, m).
std::vector<Involution> builtin_involutions(GroupPtr group);

/// Involution from {"kind": ..., "matrix": [[codes...], ...]}; frobenius may omit the matrix.
Involution involution_from_json(GroupPtr group, const nlohmann::json& j);

/// H = {g : sigma(g) = g}.
SubgroupData fixed_subgroup(const Involution& sigma);

/// g -> chi(sigma(g)^-1). chi must live on a class structure of sigma's group
/// that is stable under sigma.
ClassFunction twisted_dual(const ClassFunction& chi, const Involution& sigma);

/// Number of elements of h in each class of s.
std::vector<std::uint64_t> class_distribution(const ClassStructure& s, const SubgroupData& h);

/// <chi|_H, 1_H> = (1/|H|) sum_h chi(h). Throws Error if not a nonnegative integer.
std::int64_t is_distinguished(const ClassFunction& chi, const SubgroupData& h);
std::int64_t is_distinguished(const ClassFunction& chi, const std::vector<std::uint64_t>& distribution,
                              std::uint64_t h_order);

/// For every irreducible: multiplicity of 1_H and whether the twisted dual
/// is itself. JSON: group, involution, H_order, rows, violations, verdict.
nlohmann::json verify_theorem_A(Workspace& ws, const Involution& sigma);

/// Both sides of <i(pi)|_H, 1> = sum over P\G/H of <pi|_{xHx^-1 cap P}, 1>.
struct MackeyResult {
  Rational lhs;
  Rational rhs;
  std::vector<Rational> summands;  // per double coset, in representative order
  bool equal = false;
  /// lhs > 0 implies some summand > 0.
  bool witness = false;
};

/// Double cosets P\G/H and, for each, the Levi-class distribution of
/// xHx^-1 cap P. Evaluate once per Levi character.
class MackeyCheck {
 public:
  MackeyCheck(Workspace& ws, const Composition& f, const SubgroupData& h);
  MackeyResult evaluate(const ClassFunction& pi) const;
  std::size_t coset_count() const { return representatives_.size(); }
  const std::vector<std::int32_t>& representatives() const { return representatives_; }

 private:
  Workspace* ws_;
  Composition f_;
  SubgroupData h_;
  std::vector<std::uint64_t> h_distribution_;
  std::vector<std::int32_t> representatives_;
  std::vector<std::vector<std::uint64_t>> levi_distribution_;
  std::vector<std::uint64_t> intersection_order_;
};

MackeyResult verify_mackey(Workspace& ws, const Composition& f, const ClassFunction& pi, const SubgroupData& h);

/// Q monomial up to scalars: r[i] is the row of the nonzero entry in column i.
/// Throws Error if Q is not monomial.
std::vector<int> monomial_pattern(const Matrix& q);

/// g -> Q sigma(g) Q^-1.
Matrix twisted_apply(const Involution& sigma, const Matrix& q, const Matrix& g);

/// Per double coset P x H: an element x (first in enumeration order) with
/// Q = x sigma(x)^-1 monomial, plus the checks sigma(Q) = Q^-1, the twisted
/// map squaring to the identity and fixing exactly xHx^-1.
struct GeometricRepresentative {
  std::int32_t coset_representative = -1;  // minimal element
  std::uint64_t coset_size = 0;
  std::int32_t x = -1;                     // -1 when no element qualifies
  Matrix q;
  std::vector<int> pattern;                // of the monomial part of the twisted map
  bool sigma_q_inverse = false;
  bool twisted_square_identity = false;
  bool fixed_group_matches = false;
  bool ok() const { return x >= 0 && sigma_q_inverse && twisted_square_identity && fixed_group_matches; }
};

std::vector<GeometricRepresentative> geometric_representatives(Workspace& ws, const Composition& f,
                                                               const Involution& sigma, const SubgroupData& h);

/// Refinement of f by T_{a,b} = {i : f(i) = a, f(r(i)) = b}.
struct TwistedLevi {
  struct Block {
    int a;
    int b;
    std::vector<int> indices;  // 0-based
  };
  std::vector<Block> blocks;   // lexicographic in (a, b)
  Composition refined;         // block sizes in the same order
  std::vector<int> partner;    // block index of T_{b,a}
  bool preserved(std::size_t block) const { return partner[block] == static_cast<int>(block); }
};

/// labeling: 1-based block labels of f (non-decreasing); r: 0-based permutation.
TwistedLevi twisted_levi(const std::vector<int>& labeling, const std::vector<int>& r);

struct TwistedLeviCheck {
  bool pattern_matches = false;  // r equals the monomial pattern of the twisted map
  bool preserved = false;        // twisted map sends the block Levi to itself
  bool pairing = false;          // generators of T_{a,b} land in T_{b,a}
  bool maximal = false;          // every strictly coarser partition inside L fails
  bool ok() const { return pattern_matches && preserved && pairing && maximal; }
};

/// Monomial matrix M with sigma_Q(g) = M base(g) M^-1.
Matrix twisted_monomial_part(const Involution& sigma, const Matrix& q);

TwistedLeviCheck verify_twisted_levi(const TwistedLevi& t, const std::vector<int>& r, const Involution& sigma,
                                     const Matrix& q);

}  // namespace glfq
