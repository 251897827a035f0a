#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace glfq {

/// Maximal torus of GL_n over F_q indexed by a partition; its rational
/// points are the product of the F_{q^part}^*.
struct TorusDatum {
  std::vector<int> parts;  // non-increasing
  std::uint64_t q = 0;

  int rank() const;
  /// q^part - 1 per part.
  std::vector<std::uint64_t> part_orders() const;
  std::uint64_t point_count() const;
  std::string to_string() const;
  bool operator==(const TorusDatum&) const = default;
};

/// Character t -> zeta^(e_i log t_i) per part. Logs are taken against a
/// norm-compatible system of generators (the norm of each generator is the
/// generator below it). This agrees with the tabulated field generator when
/// the field norm maps generator to generator (q = 3 at small levels), and
/// differs from it by a unit multiplier otherwise, which commutes with the
/// Frobenius and leaves every count and equivalence unchanged.
struct TorusCharacter {
  TorusDatum torus;
  std::vector<std::uint64_t> exponents;  // reduced mod the part orders

  /// Throws Error unless exponents match the parts and are reduced.
  void validate() const;
  bool is_trivial() const;
  bool operator==(const TorusCharacter&) const = default;
};

/// One torus per partition of n, reverse-lexicographic: (n), (n-1,1), ...
std::vector<TorusDatum> list_tori(int n, std::uint64_t q);

/// Every character of the torus, exponents in lexicographic order.
std::vector<TorusCharacter> all_characters(const TorusDatum& t);

/// theta composed with the norm from F_{q^{N part}} to F_{q^part}, as a
/// character of the same partition over F_{q^N}.
TorusCharacter norm_pullback(const TorusCharacter& theta, int extension);

/// Pullback to F_{q^N} (N divisible by every part) restricted to the split
/// coordinates: part i contributes e_i c_i q^j, j < part, in that order,
/// with c_i = (q^N - 1)/(q^part - 1). Values mod q^N - 1.
std::vector<std::uint64_t> split_exponents(const TorusCharacter& theta, int level);

/// Compares split exponents up to coordinate permutation at every multiple of
/// the lcm of all parts up to max_level. Throws Error if max_level is below
/// that lcm, or if the levels disagree.
bool geometrically_conjugate(const TorusCharacter& a, const TorusCharacter& b, int max_level);

/// Least common split level of the two tori.
int common_split_level(const TorusDatum& a, const TorusDatum& b);

/// No nontrivial Weyl element (permutation among equal parts with
/// per-part twists t -> t^{q^j}) fixes theta.
bool in_general_position(const TorusCharacter& theta);

/// Orbits of general-position characters of F_{q^n}^* under t -> t^q.
std::uint64_t anisotropic_gp_count(int n, std::uint64_t q);

/// Involution on the split torus (F_{q^N}^*)^n: t_i -> t_{perm[i]}^(sign[i] q^frobenius[i]).
struct SplitTorusAction {
  std::vector<int> perm;
  std::vector<int> sign;       // +1 or -1
  std::vector<int> frobenius;  // powers of q
  static SplitTorusAction identity(int n);
  static SplitTorusAction inversion(int n);
};

/// theta~(sigma(t)) = theta~(t)^-1 for the pullback theta~ at the given level,
/// checked coefficientwise on exponents. Throws Error if the action is not an
/// involution at that level.
bool lusztig_condition(const TorusCharacter& theta, const SplitTorusAction& action, int level);

/// Anisotropic characters of GL_n are geometrically conjugate to a split
/// character exactly when Fr-invariant. Report with counts and mismatches.
nlohmann::json split_conjugacy_report(int n, std::uint64_t q);

/// Tori of GL_n over F_{q^m} against tori of the restriction of scalars
/// (partitions of nm with every part divisible by m), matched on point orders
/// and character groups.
nlohmann::json scalars_bijection(int n, std::uint64_t q, int m);

/// Torus data for the runner: tori list, gp count against D_n, the split
/// conjugacy check for n, and the restriction-of-scalars match when m = 2.
nlohmann::json tori_report(int n, std::uint64_t q, int m);

}  // namespace glfq
