#include "glfq/rep.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace glfq {

// ---------------------------------------------------------------------------
// Workspace

Workspace::Workspace(std::uint64_t q, int m, std::uint64_t bound) : q_(q), m_(m), bound_(bound) {
  GroupSpec{1, q, m}.validate();
}

GroupPtr Workspace::group(int n) {
  auto& slot = groups_[n];
  if (!slot) slot = std::make_shared<Group>(spec(n), bound_);
  return slot;
}

ConjClassTablePtr Workspace::classes(int n) {
  auto& slot = classes_[n];
  if (!slot) slot = std::make_shared<ConjClassTable>(group(n));
  return slot;
}

CharacterTablePtr Workspace::characters(int n) {
  auto& slot = characters_[n];
  if (!slot) slot = std::make_shared<CharacterTable>(character_table(classes(n)->structure()));
  return slot;
}

const StandardSubgroups& Workspace::standard(const Composition& f) {
  auto it = standard_.find(f.parts);
  if (it == standard_.end()) it = standard_.emplace(f.parts, standard_subgroups(group(f.total()), f)).first;
  return it->second;
}

LeviPtr Workspace::levi(const Composition& f) {
  auto& slot = levis_[f.parts];
  if (!slot) {
    std::vector<ConjClassTablePtr> factors;
    for (int part : f.parts) factors.push_back(classes(part));
    slot = std::make_shared<Levi>(group(f.total()), f, std::move(factors));
  }
  return slot;
}

CharacterTablePtr Workspace::levi_characters(const Composition& f) {
  auto& slot = levi_characters_[f.parts];
  if (!slot) {
    std::vector<CharacterTablePtr> factors;
    for (int part : f.parts) factors.push_back(characters(part));
    slot = std::make_shared<CharacterTable>(levi_character_table(*levi(f), factors));
  }
  return slot;
}

const std::vector<std::int32_t>& Workspace::parabolic_cosets(const Composition& f) {
  auto it = cosets_.find(f.parts);
  if (it == cosets_.end()) it = cosets_.emplace(f.parts, left_coset_representatives(standard(f).parabolic)).first;
  return it->second;
}

const std::vector<std::size_t>& Workspace::cuspidals(int n) {
  auto it = cuspidals_.find(n);
  if (it != cuspidals_.end()) return it->second;
  auto table = characters(n);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < table->size(); ++i)
    if (is_cuspidal(*this, (*table)[i])) out.push_back(i);
  return cuspidals_.emplace(n, std::move(out)).first->second;
}

// ---------------------------------------------------------------------------
// Induction and restriction

Matrix levi_part(const Matrix& m, const Composition& f) {
  const auto label = f.labeling();
  Matrix out = m;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (label[i] != label[j]) out(i, j) = 0;
  return out;
}

namespace {

// Accepts a class function on the Levi structure, or on GL_n itself when f has one block.
ClassFunction on_levi(Workspace& ws, const Composition& f, const ClassFunction& chi) {
  auto levi = ws.levi(f);
  if (chi.structure_ptr() == levi->structure()) return chi;
  if (f.blocks() == 1 && chi.structure_ptr() == ws.classes(f.total())->structure())
    return ClassFunction(levi->structure(), chi.values());
  throw Error("class function does not live on the Levi " + f.to_string());
}

ClassFunction on_group(Workspace& ws, int n, const ClassFunction& chi) {
  auto s = ws.classes(n)->structure();
  if (chi.structure_ptr() == s) return chi;
  if (chi.structure_ptr() == ws.levi(Composition{{n}})->structure()) return ClassFunction(s, chi.values());
  throw Error("class function does not live on GL_" + std::to_string(n));
}

ClassFunction from_counts(ClassStructurePtr s, const std::vector<std::vector<std::uint64_t>>& counts,
                          const ClassFunction& chi, const Rational& scale) {
  std::vector<Cyclotomic> values(s->class_count());
  for (std::size_t c = 0; c < values.size(); ++c) {
    Cyclotomic acc;
    for (std::size_t d = 0; d < counts[c].size(); ++d)
      if (counts[c][d] && !chi[d].is_zero()) acc += chi[d] * Cyclotomic(static_cast<std::int64_t>(counts[c][d]));
    values[c] = acc * Cyclotomic(scale);
  }
  return ClassFunction(std::move(s), std::move(values));
}

}  // namespace

ClassFunction parabolic_induce(Workspace& ws, const Composition& f, const ClassFunction& chi) {
  const int n = f.total();
  const ClassFunction levi_chi = on_levi(ws, f, chi);
  const Group& g = *ws.group(n);
  auto target = ws.classes(n)->structure();
  const ClassStructure& levi = *ws.levi(f)->structure();
  const auto& cosets = ws.parabolic_cosets(f);
  std::vector<std::vector<std::uint64_t>> counts(target->class_count(), std::vector<std::uint64_t>(levi.class_count(), 0));
  for (std::size_t c = 0; c < target->class_count(); ++c) {
    const auto rep = target->representatives[c];
    for (auto t : cosets) {
      const Matrix& y = g.element(g.conjugate(g.inverse_index(t), rep));
      if (!in_parabolic(y, f)) continue;
      ++counts[c][levi.class_of[g.index_of(levi_part(y, f))]];
    }
  }
  return from_counts(target, counts, levi_chi, Rational(1));
}

ClassFunction parabolic_induce_full_sum(Workspace& ws, const Composition& f, const ClassFunction& chi) {
  const int n = f.total();
  const ClassFunction levi_chi = on_levi(ws, f, chi);
  const Group& g = *ws.group(n);
  auto target = ws.classes(n)->structure();
  const ClassStructure& levi = *ws.levi(f)->structure();
  std::vector<std::vector<std::uint64_t>> counts(target->class_count(), std::vector<std::uint64_t>(levi.class_count(), 0));
  for (std::size_t c = 0; c < target->class_count(); ++c) {
    const auto rep = target->representatives[c];
    for (std::int32_t x = 0; x < static_cast<std::int32_t>(g.order()); ++x) {
      const Matrix& y = g.element(g.conjugate(x, rep));
      if (!in_parabolic(y, f)) continue;
      ++counts[c][levi.class_of[g.index_of(levi_part(y, f))]];
    }
  }
  const auto p_order = static_cast<std::int64_t>(ws.standard(f).parabolic.order());
  return from_counts(target, counts, levi_chi, Rational(1, p_order));
}

ClassFunction jacquet_restrict(Workspace& ws, const Composition& f, const ClassFunction& chi, Radical radical) {
  const int n = f.total();
  const ClassFunction g_chi = on_group(ws, n, chi);
  const Group& g = *ws.group(n);
  auto levi = ws.levi(f)->structure();
  const ClassStructure& gs = g_chi.structure();
  std::vector<std::int32_t> radical_elements = ws.standard(f).unipotent.elements;
  if (radical == Radical::lower)
    for (auto& u : radical_elements) u = g.index_of(g.element(u).transpose());
  std::vector<std::vector<std::uint64_t>> counts(levi->class_count(), std::vector<std::uint64_t>(gs.class_count(), 0));
  for (std::size_t c = 0; c < levi->class_count(); ++c) {
    const auto l = levi->representatives[c];
    for (auto u : radical_elements) ++counts[c][gs.class_of[g.multiply(l, u)]];
  }
  return from_counts(levi, counts, g_chi, Rational(1, static_cast<std::int64_t>(radical_elements.size())));
}

bool is_cuspidal(Workspace& ws, const ClassFunction& chi) {
  if (inner_product(chi, chi) != Cyclotomic(1) || !chi.degree().is_rational() || chi.degree().rational() <= Rational(0))
    throw Error("is_cuspidal: input is not an irreducible character");
  const int n = chi.structure().ambient->dim();
  for (const auto& f : compositions(n)) {
    if (f.blocks() < 2) continue;
    if (!jacquet_restrict(ws, f, chi).is_zero()) return false;
  }
  return true;
}

std::uint64_t d_count(int n, std::uint64_t q) {
  if (n < 1) throw Error("d_count: n must be positive");
  auto mobius = [](std::uint64_t k) {
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= k; ++p) {
      if (k % p) continue;
      k /= p;
      if (k % p == 0) return 0;
      sign = -sign;
    }
    if (k > 1) sign = -sign;
    return sign;
  };
  std::int64_t total = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) total += mobius(static_cast<std::uint64_t>(n / d)) * static_cast<std::int64_t>(ipow(q, d) - 1);
  if (total % n) throw Error("d_count: Moebius sum not divisible by n (defect)");
  return static_cast<std::uint64_t>(total / n);
}

std::int64_t whittaker_dim(Workspace& ws, const ClassFunction& chi, FieldCode multiplier) {
  if (multiplier == 0) throw Error("whittaker_dim: additive character must be nontrivial");
  const int n = chi.structure().ambient->dim();
  const ClassFunction g_chi = on_group(ws, n, chi);
  const Group& g = *ws.group(n);
  const Field& f = g.field();
  const std::uint32_t p = f.characteristic();
  const auto& u_elements = ws.standard(Composition{std::vector<int>(n, 1)}).unipotent.elements;
  const ClassStructure& s = g_chi.structure();
  std::vector<std::vector<std::uint64_t>> counts(s.class_count(), std::vector<std::uint64_t>(p, 0));
  for (auto u : u_elements) {
    const Matrix& m = g.element(u);
    FieldCode sum = 0;
    for (int i = 0; i + 1 < n; ++i) sum = f.add(sum, m(i, i + 1));
    ++counts[s.class_of[u]][absolute_trace(f, f.mul(multiplier, sum))];
  }
  Cyclotomic acc;
  for (std::size_t c = 0; c < s.class_count(); ++c)
    for (std::uint32_t t = 0; t < p; ++t)
      if (counts[c][t])
        acc += g_chi[c] * Cyclotomic::root_of_unity(p, -static_cast<std::int64_t>(t)) *
               Cyclotomic(static_cast<std::int64_t>(counts[c][t]));
  acc = acc / Rational(static_cast<std::int64_t>(u_elements.size()));
  if (!acc.is_rational() || acc.rational().denominator() != 1)
    throw Error("whittaker_dim: non-integral multiplicity " + acc.to_string());
  return acc.integer();
}

// ---------------------------------------------------------------------------
// Cuspidal support

ClassFunction induce_support(Workspace& ws, const CuspidalSupport& support) {
  if (support.empty()) throw Error("empty cuspidal support");
  Composition f;
  std::vector<ClassFunction> factors;
  for (const auto& c : support) {
    f.parts.push_back(c.degree);
    factors.push_back((*ws.characters(c.degree))[c.index]);
  }
  return parabolic_induce(ws, f, external_tensor(*ws.levi(f), factors));
}

std::vector<CuspidalSupport> cuspidal_multisets(Workspace& ws, int n) {
  std::vector<CuspidalFactor> all;
  for (int d = 1; d <= n; ++d)
    for (auto i : ws.cuspidals(d)) all.push_back({d, i});
  std::vector<CuspidalSupport> out;
  CuspidalSupport cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int remaining) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < all.size(); ++i) {
      if (all[i].degree > remaining) continue;
      cur.push_back(all[i]);
      rec(i, remaining - all[i].degree);
      cur.pop_back();
    }
  };
  rec(0, n);
  return out;
}

std::vector<std::vector<CuspidalSupport>> support_scan(Workspace& ws, int n) {
  auto table = ws.characters(n);
  std::vector<std::vector<CuspidalSupport>> found(table->size());
  for (const auto& support : cuspidal_multisets(ws, n)) {
    const auto mult = table->decompose(induce_support(ws, support));
    for (std::size_t i = 0; i < mult.size(); ++i) {
      if (mult[i] < 0) throw Error("induced character has a negative multiplicity (defect)");
      if (mult[i] > 0) found[i].push_back(support);
    }
  }
  return found;
}

CuspidalSupport cuspidal_support(Workspace& ws, int n, std::size_t char_index) {
  const auto found = support_scan(ws, n);
  if (char_index >= found.size()) throw Error("cuspidal_support: character index out of range");
  const auto& s = found[char_index];
  if (s.size() != 1)
    throw Error("irreducible " + std::to_string(char_index) + " of GL_" + std::to_string(n) + " has " +
                std::to_string(s.size()) + " cuspidal supports (defect)");
  return s.front();
}

std::string to_string(const CuspidalSupport& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << '(' << s[i].degree << ',' << s[i].index << ')';
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------
// Graded ring checks

namespace {

using Multiplicities = std::vector<std::int64_t>;

class GradedRing {
 public:
  explicit GradedRing(Workspace& ws) : ws_(ws) {}

  std::size_t rank(int n) { return n == 0 ? 1 : ws_.characters(n)->size(); }

  // x_i * y_j decomposed in R_{a+b}.
  const Multiplicities& product(int a, int b, std::size_t i, std::size_t j) {
    const auto key = std::make_tuple(a, b, i, j);
    if (auto it = products_.find(key); it != products_.end()) return it->second;
    Multiplicities out;
    if (a == 0 || b == 0) {
      out.assign(rank(a + b), 0);
      out[a == 0 ? j : i] = 1;
    } else {
      const Composition f{{a, b}};
      const auto levi = ws_.levi(f);
      auto chi = external_tensor(*levi, {(*ws_.characters(a))[i], (*ws_.characters(b))[j]});
      out = ws_.characters(a + b)->decompose(parabolic_induce(ws_, f, chi));
    }
    return products_.emplace(key, std::move(out)).first->second;
  }

  // Component of m*(z) in R_a (x) R_{n-a}, flattened row-major.
  const Multiplicities& coproduct(int n, std::size_t z, int a) {
    const auto key = std::make_tuple(n, z, a);
    if (auto it = coproducts_.find(key); it != coproducts_.end()) return it->second;
    Multiplicities out;
    if (a == 0 || a == n) {
      out.assign(rank(a) * rank(n - a), 0);
      out[a == 0 ? z : z * rank(0)] = 1;
    } else {
      const Composition f{{a, n - a}};
      out = ws_.levi_characters(f)->decompose(jacquet_restrict(ws_, f, (*ws_.characters(n))[z]));
    }
    return coproducts_.emplace(key, std::move(out)).first->second;
  }

 private:
  Workspace& ws_;
  std::map<std::tuple<int, int, std::size_t, std::size_t>, Multiplicities> products_;
  std::map<std::tuple<int, std::size_t, int>, Multiplicities> coproducts_;
};

nlohmann::json check_entry(const std::string& name, std::uint64_t count, const nlohmann::json& failures) {
  nlohmann::json j;
  j["name"] = name;
  j["checked"] = count;
  j["status"] = failures.empty() ? "pass" : "fail";
  if (!failures.empty()) j["failures"] = failures;
  return j;
}

}  // namespace

nlohmann::json psh_verify(Workspace& ws, int max_degree) {
  if (max_degree < 1) throw Error("psh_verify: max_degree must be at least 1");
  GradedRing ring(ws);
  nlohmann::json checks = nlohmann::json::array();

  // (a) positivity and (b) adjointness.
  nlohmann::json positivity_failures = nlohmann::json::array(), adjoint_failures = nlohmann::json::array();
  std::uint64_t positivity_count = 0, adjoint_count = 0;
  for (int n = 2; n <= max_degree; ++n)
    for (int a = 1; a < n; ++a) {
      const int b = n - a;
      for (std::size_t i = 0; i < ring.rank(a); ++i)
        for (std::size_t j = 0; j < ring.rank(b); ++j) {
          const auto& prod = ring.product(a, b, i, j);
          ++positivity_count;
          if (std::any_of(prod.begin(), prod.end(), [](auto v) { return v < 0; }))
            positivity_failures.push_back({{"induce", {a, b}}, {"pair", {i, j}}});
          for (std::size_t z = 0; z < ring.rank(n); ++z) {
            ++adjoint_count;
            const auto down = ring.coproduct(n, z, a)[i * ring.rank(b) + j];
            if (prod[z] != down)
              adjoint_failures.push_back({{"composition", {a, b}}, {"pair", {i, j}}, {"target", z}, {"induced", prod[z]}, {"restricted", down}});
          }
        }
      for (std::size_t z = 0; z < ring.rank(n); ++z) {
        const auto& co = ring.coproduct(n, z, a);
        ++positivity_count;
        if (std::any_of(co.begin(), co.end(), [](auto v) { return v < 0; }))
          positivity_failures.push_back({{"restrict", {a, b}}, {"character", z}});
      }
    }
  checks.push_back(check_entry("positivity", positivity_count, positivity_failures));
  checks.push_back(check_entry("adjointness", adjoint_count, adjoint_failures));

  // (c) m*(x y) = m*(x) m*(y).
  nlohmann::json bialgebra_failures = nlohmann::json::array();
  std::uint64_t bialgebra_count = 0;
  for (int n = 2; n <= max_degree; ++n)
    for (int a = 1; a < n; ++a) {
      const int b = n - a;
      for (std::size_t i = 0; i < ring.rank(a); ++i)
        for (std::size_t j = 0; j < ring.rank(b); ++j)
          for (int c = 0; c <= n; ++c) {
            const int d = n - c;
            const std::size_t rc = ring.rank(c), rd = ring.rank(d);
            Multiplicities lhs(rc * rd, 0), rhs(rc * rd, 0);
            const auto& prod = ring.product(a, b, i, j);
            for (std::size_t z = 0; z < prod.size(); ++z) {
              if (!prod[z]) continue;
              const auto& co = ring.coproduct(n, z, c);
              for (std::size_t t = 0; t < co.size(); ++t) lhs[t] += prod[z] * co[t];
            }
            for (int a1 = std::max(0, c - b); a1 <= std::min(a, c); ++a1) {
              const int a2 = a - a1, b1 = c - a1, b2 = b - b1;
              const auto& xs = ring.coproduct(a, i, a1);
              const auto& ys = ring.coproduct(b, j, b1);
              for (std::size_t i1 = 0; i1 < ring.rank(a1); ++i1)
                for (std::size_t i2 = 0; i2 < ring.rank(a2); ++i2) {
                  const auto xv = xs[i1 * ring.rank(a2) + i2];
                  if (!xv) continue;
                  for (std::size_t j1 = 0; j1 < ring.rank(b1); ++j1)
                    for (std::size_t j2 = 0; j2 < ring.rank(b2); ++j2) {
                      const auto yv = ys[j1 * ring.rank(b2) + j2];
                      if (!yv) continue;
                      const auto& left = ring.product(a1, b1, i1, j1);
                      const auto& right = ring.product(a2, b2, i2, j2);
                      for (std::size_t u = 0; u < rc; ++u)
                        if (left[u])
                          for (std::size_t v = 0; v < rd; ++v) rhs[u * rd + v] += xv * yv * left[u] * right[v];
                    }
                }
            }
            ++bialgebra_count;
            if (lhs != rhs) bialgebra_failures.push_back({{"pair_degrees", {a, b}}, {"pair", {i, j}}, {"component", {c, d}}});
          }
    }
  checks.push_back(check_entry("bialgebra", bialgebra_count, bialgebra_failures));

  // Primitive elements among irreducibles are exactly the cuspidals.
  nlohmann::json primitive_failures = nlohmann::json::array();
  std::uint64_t primitive_count = 0;
  for (int n = 1; n <= max_degree; ++n) {
    const auto& cusp = ws.cuspidals(n);
    for (std::size_t z = 0; z < ring.rank(n); ++z) {
      bool primitive = true;
      for (int a = 1; a < n && primitive; ++a) {
        const auto& co = ring.coproduct(n, z, a);
        primitive = std::all_of(co.begin(), co.end(), [](auto v) { return v == 0; });
      }
      ++primitive_count;
      const bool cuspidal = std::find(cusp.begin(), cusp.end(), z) != cusp.end();
      if (primitive != cuspidal) primitive_failures.push_back({{"degree", n}, {"character", z}});
    }
  }
  checks.push_back(check_entry("primitive_is_cuspidal", primitive_count, primitive_failures));

  // rho^2 for degree-one cuspidals.
  nlohmann::json square_failures = nlohmann::json::array(), squares = nlohmann::json::array();
  if (max_degree >= 2) {
    auto t2 = ws.characters(2);
    for (auto rho : ws.cuspidals(1)) {
      const auto& prod = ring.product(1, 1, rho, rho);
      nlohmann::json parts = nlohmann::json::array();
      std::size_t constituents = 0;
      bool multiplicity_one = true;
      for (std::size_t z = 0; z < prod.size(); ++z) {
        if (!prod[z]) continue;
        ++constituents;
        multiplicity_one = multiplicity_one && prod[z] == 1;
        parts.push_back({{"index", z}, {"degree", t2->degree(z)}, {"multiplicity", prod[z]}});
      }
      squares.push_back({{"rho", rho}, {"constituents", parts}});
      if (constituents != 2 || !multiplicity_one) square_failures.push_back({{"rho", rho}, {"constituents", parts}});
    }
  }
  auto square_entry = check_entry("rho_squared_two_constituents", squares.size(), square_failures);
  square_entry["squares"] = squares;
  checks.push_back(square_entry);

  bool pass = true;
  for (const auto& c : checks) pass = pass && c["status"] == "pass";
  nlohmann::json report;
  report["q"] = ws.q();
  report["m"] = ws.m();
  report["max_degree"] = max_degree;
  report["checks"] = checks;
  report["verdict"] = pass ? "pass" : "fail";
  return report;
}

}  // namespace glfq
