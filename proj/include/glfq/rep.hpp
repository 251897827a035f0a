#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "glfq/chartab.hpp"
#include "glfq/classes.hpp"
#include "glfq/group.hpp"

namespace glfq {

/// Lazily built groups, class tables, character tables and Levi data for
/// GL_n(F_{q^m}), n = 1, 2, ..., sharing one element field. Not thread-safe.
class Workspace {
 public:
  explicit Workspace(std::uint64_t q, int m = 1, std::uint64_t bound = kDefaultEnumerationBound);

  std::uint64_t q() const { return q_; }
  int m() const { return m_; }
  std::uint64_t bound() const { return bound_; }
  GroupSpec spec(int n) const { return GroupSpec{n, q_, m_}; }

  GroupPtr group(int n);
  ConjClassTablePtr classes(int n);
  CharacterTablePtr characters(int n);
  const StandardSubgroups& standard(const Composition& f);
  LeviPtr levi(const Composition& f);
  /// External tensors of the block tables, mixed-radix order.
  CharacterTablePtr levi_characters(const Composition& f);
  /// Minimal representatives of the left cosets gP.
  const std::vector<std::int32_t>& parabolic_cosets(const Composition& f);
  /// Indices of the cuspidal irreducibles of GL_n.
  const std::vector<std::size_t>& cuspidals(int n);

 private:
  std::uint64_t q_;
  int m_;
  std::uint64_t bound_;
  std::map<int, GroupPtr> groups_;
  std::map<int, ConjClassTablePtr> classes_;
  std::map<int, CharacterTablePtr> characters_;
  std::map<std::vector<int>, StandardSubgroups> standard_;
  std::map<std::vector<int>, LeviPtr> levis_;
  std::map<std::vector<int>, CharacterTablePtr> levi_characters_;
  std::map<std::vector<int>, std::vector<std::int32_t>> cosets_;
  std::map<int, std::vector<std::size_t>> cuspidals_;
};

/// Block-diagonal part of a matrix.
Matrix levi_part(const Matrix& m, const Composition& f);

/// Harish-Chandra induction of a class function on the Levi of f, summed
/// over left coset representatives of P.
ClassFunction parabolic_induce(Workspace& ws, const Composition& f, const ClassFunction& chi);

/// Same value computed from the defining sum over all of G.
ClassFunction parabolic_induce_full_sum(Workspace& ws, const Composition& f, const ClassFunction& chi);

enum class Radical { upper, lower };

/// Average of chi over l * U for each Levi class.
ClassFunction jacquet_restrict(Workspace& ws, const Composition& f, const ClassFunction& chi,
                               Radical radical = Radical::upper);

/// All proper Jacquet restrictions vanish. Throws Error if chi is not irreducible.
bool is_cuspidal(Workspace& ws, const ClassFunction& chi);

/// (1/n) sum_{d | n} mu(n/d) (q^d - 1).
std::uint64_t d_count(int n, std::uint64_t q);

/// <chi|_U, phi> over the upper unitriangular group with
/// phi(u) = zeta_p^Tr(a * sum u_{i,i+1}). Throws Error for a = 0 or a
/// non-integral result.
std::int64_t whittaker_dim(Workspace& ws, const ClassFunction& chi, FieldCode multiplier);

/// A cuspidal irreducible of GL_degree, by table index.
struct CuspidalFactor {
  int degree;
  std::size_t index;
  bool operator<(const CuspidalFactor& o) const { return std::tie(degree, index) < std::tie(o.degree, o.index); }
  bool operator==(const CuspidalFactor&) const = default;
};

/// Sorted multiset of cuspidal factors.
using CuspidalSupport = std::vector<CuspidalFactor>;

/// Induction of the external tensor of a sorted support, on GL_n.
ClassFunction induce_support(Workspace& ws, const CuspidalSupport& support);

/// All multisets of cuspidals with degrees summing to n, sorted.
std::vector<CuspidalSupport> cuspidal_multisets(Workspace& ws, int n);

/// For every irreducible of GL_n, the list of supports whose induction
/// contains it (exactly one expected).
std::vector<std::vector<CuspidalSupport>> support_scan(Workspace& ws, int n);

/// The unique support of irreducible char_index of GL_n. Throws Error if
/// none or several are found.
CuspidalSupport cuspidal_support(Workspace& ws, int n, std::size_t char_index);

std::string to_string(const CuspidalSupport& s);

/// Positivity, adjointness, bialgebra compatibility and the split of rho^2
/// through total degree max_degree. Report has "checks" and "verdict".
nlohmann::json psh_verify(Workspace& ws, int max_degree);

}  // namespace glfq
