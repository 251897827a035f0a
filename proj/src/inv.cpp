#include "glfq/inv.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace glfq {

std::string to_string(InvolutionKind kind) {
  switch (kind) {
    case InvolutionKind::inner: return "inner";
    case InvolutionKind::transpose_inverse: return "transpose_inverse";
    case InvolutionKind::frobenius: return "frobenius";
    case InvolutionKind::frobenius_transpose_inverse: return "frobenius_transpose_inverse";
  }
  return "?";
}

InvolutionKind parse_involution_kind(const std::string& s) {
  for (auto k : {InvolutionKind::inner, InvolutionKind::transpose_inverse, InvolutionKind::frobenius,
                 InvolutionKind::frobenius_transpose_inverse})
    if (to_string(k) == s) return k;
  throw Error("unknown involution kind '" + s + "'");
}

// ---------------------------------------------------------------------------
// Involution

namespace {

Matrix negated(const Matrix& m) { return m.scaled(m.field().neg(m.field().one())); }

constexpr std::size_t kExhaustiveHomomorphismLimit = 10'000;
constexpr std::size_t kSampledPairs = 100'000;

}  // namespace

Involution::Involution(GroupPtr group, InvolutionKind kind, Matrix parameter, std::string name)
    : group_(std::move(group)), kind_(kind), parameter_(std::move(parameter)), name_(std::move(name)) {
  const Group& g = *group_;
  const Field* f = &g.field();
  const int n = g.dim();
  if (parameter_.dim() == 0 || parameter_.field_ptr() == nullptr) parameter_ = Matrix::identity(f, n);
  if (parameter_.dim() != n || !parameter_.field().same_as(*f))
    throw Error("involution parameter does not match the group");
  const bool frobenius_kind =
      kind_ == InvolutionKind::frobenius || kind_ == InvolutionKind::frobenius_transpose_inverse;
  if (frobenius_kind && g.spec().m != 2) throw Error(to_string(kind_) + " requires m = 2");

  switch (kind_) {
    case InvolutionKind::inner: {
      if (!parameter_.invertible()) throw Error("inner involution: A is singular");
      if (!(parameter_ * parameter_).is_scalar()) throw Error("inner involution: A^2 is not scalar");
      break;
    }
    case InvolutionKind::transpose_inverse: {
      const Matrix t = parameter_.transpose();
      const bool symmetric = t == parameter_;
      const bool antisymmetric = t == negated(parameter_);
      if (!symmetric && !antisymmetric) throw Error("transpose-inverse involution: J is neither symmetric nor antisymmetric");
      if (!symmetric && n % 2) throw Error("transpose-inverse involution: antisymmetric J needs even n");
      if (!parameter_.invertible()) throw Error("transpose-inverse involution: J is singular");
      break;
    }
    case InvolutionKind::frobenius: {
      if (!parameter_.is_identity()) throw Error("frobenius involution takes no parameter");
      break;
    }
    case InvolutionKind::frobenius_transpose_inverse: {
      if (!parameter_.invertible()) throw Error("frobenius transpose-inverse involution: J is singular");
      const Matrix ratio = parameter_.frobenius(g.spec().q).transpose() * parameter_.inverse();
      if (!ratio.is_scalar()) throw Error("frobenius transpose-inverse involution: Fr(J)^t J^-1 is not scalar");
      break;
    }
  }
  parameter_inverse_ = parameter_.inverse();
  if (name_.empty()) name_ = to_string(kind_);

  image_.resize(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    image_[i] = g.index_of(apply(g.element(static_cast<std::int32_t>(i))));
    if (image_[i] < 0) throw Error("involution leaves the group (defect)");
  }
  for (std::size_t i = 0; i < g.order(); ++i)
    if (image_[image_[i]] != static_cast<std::int32_t>(i)) throw Error(describe() + " does not square to the identity");
  auto check_pair = [&](std::int32_t a, std::int32_t b) {
    if (image_[g.multiply(a, b)] != g.multiply(image_[a], image_[b]))
      throw Error(describe() + " is not a homomorphism");
  };
  const auto order = static_cast<std::int32_t>(g.order());
  if (g.order() <= kExhaustiveHomomorphismLimit) {
    for (std::int32_t a = 0; a < order; ++a)
      for (std::int32_t b = 0; b < order; ++b) check_pair(a, b);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::int32_t> pick(0, order - 1);
    for (std::size_t t = 0; t < kSampledPairs; ++t) check_pair(pick(rng), pick(rng));
  }
}

Matrix Involution::base(const Matrix& g) const {
  switch (kind_) {
    case InvolutionKind::inner: return g;
    case InvolutionKind::transpose_inverse: return g.inverse().transpose();
    case InvolutionKind::frobenius: return g.frobenius(group_->spec().q);
    case InvolutionKind::frobenius_transpose_inverse: return g.frobenius(group_->spec().q).inverse().transpose();
  }
  return g;
}

Matrix Involution::apply(const Matrix& g) const { return parameter_ * base(g) * parameter_inverse_; }

std::string Involution::describe() const { return name_ + "[" + to_string(kind_) + " " + parameter_.to_string() + "]"; }

nlohmann::json Involution::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < parameter_.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < parameter_.dim(); ++j) row.push_back(parameter_(i, j));
    rows.push_back(row);
  }
  return {{"kind", to_string(kind_)}, {"parameter", rows}};
}

Matrix e_form(const Field& f, int n) {
  if (n % 2) throw Error("E-form needs even n");
  const FieldCode z = smallest_nonsquare(f, f.order());
  Matrix e(&f, n);
  for (int b = 0; b < n; b += 2) {
    e(b, b + 1) = f.one();
    e(b + 1, b) = z;
  }
  return e;
}

Matrix standard_symplectic_form(const Field& f, int n) {
  if (n % 2) throw Error("symplectic form needs even n");
  Matrix j(&f, n);
  for (int b = 0; b < n; b += 2) {
    j(b, b + 1) = f.one();
    j(b + 1, b) = f.neg(f.one());
  }
  return j;
}

Matrix split_diagonal(const Field& f, int n, int k) {
  if (k < 0 || k > n) throw Error("split_diagonal: bad count");
  std::vector<FieldCode> d(n, f.one());
  for (int i = n - k; i < n; ++i) d[i] = f.neg(f.one());
  return Matrix::diagonal(&f, d);
}

std::vector<Involution> builtin_involutions(GroupPtr group) {
  const Field& f = group->field();
  const int n = group->dim();
  std::vector<Involution> out;
  for (int k = 1; 2 * k <= n; ++k)
    out.emplace_back(group, InvolutionKind::inner, split_diagonal(f, n, k), "inner_diag_" + std::to_string(k));
  if (n % 2 == 0) out.emplace_back(group, InvolutionKind::inner, e_form(f, n), "inner_eform");
  out.emplace_back(group, InvolutionKind::transpose_inverse, Matrix::identity(&f, n), "ti_symmetric");
  if (n % 2 == 0)
    out.emplace_back(group, InvolutionKind::transpose_inverse, standard_symplectic_form(f, n), "ti_antisymmetric");
  if (group->spec().m == 2) {
    out.emplace_back(group, InvolutionKind::frobenius, Matrix::identity(&f, n), "frobenius");
    out.emplace_back(group, InvolutionKind::frobenius_transpose_inverse, Matrix::identity(&f, n), "frobenius_ti_hermitian");
  }
  return out;
}

Involution involution_from_json(GroupPtr group, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error("involution JSON needs a \"kind\"");
  const auto kind = parse_involution_kind(j.at("kind").get<std::string>());
  const Field& f = group->field();
  const int n = group->dim();
  Matrix m = Matrix::identity(&f, n);
  const char* key = j.contains("matrix") ? "matrix" : (j.contains("parameter") ? "parameter" : nullptr);
  if (key) {
    const auto& rows = j.at(key);
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw Error("involution matrix must have n rows");
    std::vector<FieldCode> codes;
    for (const auto& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != n) throw Error("involution matrix must be square");
      for (const auto& v : row) {
        const auto c = v.get<std::int64_t>();
        if (c < 0 || c >= static_cast<std::int64_t>(f.order())) throw Error("involution matrix entry out of range");
        codes.push_back(static_cast<FieldCode>(c));
      }
    }
    m = Matrix::from_codes(&f, n, codes);
  } else if (kind != InvolutionKind::frobenius) {
    throw Error("involution JSON needs a \"matrix\"");
  }
  return Involution(std::move(group), kind, m, j.value("name", std::string()));
}

SubgroupData fixed_subgroup(const Involution& sigma) {
  SubgroupData h;
  h.parent = sigma.group_ptr();
  h.descriptor = "fix(" + sigma.describe() + ")";
  for (std::size_t i = 0; i < sigma.group().order(); ++i)
    if (sigma.apply_index(static_cast<std::int32_t>(i)) == static_cast<std::int32_t>(i))
      h.elements.push_back(static_cast<std::int32_t>(i));
  return h;
}

ClassFunction twisted_dual(const ClassFunction& chi, const Involution& sigma) {
  const ClassStructure& s = chi.structure();
  if (s.ambient != sigma.group_ptr()) throw Error("twisted_dual: character and involution live on different groups");
  const Group& g = sigma.group();
  std::vector<Cyclotomic> v(s.class_count());
  for (std::size_t c = 0; c < v.size(); ++c) {
    const auto cls = s.class_of_element(g.inverse_index(sigma.apply_index(s.representatives[c])));
    if (cls < 0) throw Error("twisted_dual: class structure is not stable under the involution");
    v[c] = chi[cls];
  }
  return ClassFunction(chi.structure_ptr(), std::move(v));
}

std::vector<std::uint64_t> class_distribution(const ClassStructure& s, const SubgroupData& h) {
  if (s.ambient != h.parent) throw Error("class_distribution: subgroup of a different group");
  std::vector<std::uint64_t> out(s.class_count(), 0);
  for (auto x : h.elements) {
    const auto c = s.class_of_element(x);
    if (c < 0) throw Error("class_distribution: element outside the class structure");
    ++out[c];
  }
  return out;
}

std::int64_t is_distinguished(const ClassFunction& chi, const std::vector<std::uint64_t>& distribution,
                              std::uint64_t h_order) {
  Cyclotomic acc;
  for (std::size_t c = 0; c < distribution.size(); ++c)
    if (distribution[c]) acc += chi[c] * Cyclotomic(static_cast<std::int64_t>(distribution[c]));
  acc = acc / Rational(static_cast<std::int64_t>(h_order));
  if (!acc.is_rational() || acc.rational().denominator() != 1 || acc.rational() < Rational(0))
    throw Error("multiplicity of the trivial character is " + acc.to_string() + " (defect)");
  return acc.integer();
}

std::int64_t is_distinguished(const ClassFunction& chi, const SubgroupData& h) {
  return is_distinguished(chi, class_distribution(chi.structure(), h), h.order());
}

nlohmann::json verify_theorem_A(Workspace& ws, const Involution& sigma) {
  const int n = sigma.group().dim();
  if (ws.group(n) != sigma.group_ptr()) throw Error("verify_theorem_A: involution not built on the workspace group");
  auto table = ws.characters(n);
  const SubgroupData h = fixed_subgroup(sigma);
  if (!is_closed_subgroup(h)) throw Error("fixed points do not form a subgroup (defect)");
  const auto dist = class_distribution(table->structure(), h);

  nlohmann::json rows = nlohmann::json::array(), violations = nlohmann::json::array();
  for (std::size_t i = 0; i < table->size(); ++i) {
    const auto& chi = (*table)[i];
    const auto mult = is_distinguished(chi, dist, h.order());
    const bool invariant = twisted_dual(chi, sigma) == chi;
    rows.push_back({{"char_index", i}, {"degree", table->degree(i)}, {"multiplicity", mult}, {"tau_invariant", invariant}});
    if (mult > 0 && !invariant) violations.push_back({{"char_index", i}, {"degree", table->degree(i)}, {"multiplicity", mult}});
  }
  const auto& spec = sigma.group().spec();
  nlohmann::json report;
  report["group"] = {{"n", spec.n}, {"q", spec.q}, {"m", spec.m}};
  report["involution"] = sigma.to_json();
  report["H_order"] = h.order();
  report["rows"] = rows;
  report["violations"] = violations;
  report["verdict"] = violations.empty() ? "pass" : "fail";
  return report;
}

// ---------------------------------------------------------------------------
// Mackey

MackeyCheck::MackeyCheck(Workspace& ws, const Composition& f, const SubgroupData& h) : ws_(&ws), f_(f), h_(h) {
  const int n = f.total();
  auto gp = ws.group(n);
  if (h.parent != gp) throw Error("MackeyCheck: subgroup not in the workspace group");
  const Group& g = *gp;
  h_distribution_ = class_distribution(*ws.classes(n)->structure(), h);
  const auto& parabolic = ws.standard(f).parabolic;
  const ClassStructure& levi = *ws.levi(f)->structure();
  for (const auto& dc : double_cosets(parabolic, h)) {
    representatives_.push_back(dc.representative);
    std::vector<std::uint64_t> dist(levi.class_count(), 0);
    std::uint64_t order = 0;
    for (auto y : h.elements) {
      const Matrix& m = g.element(g.conjugate(dc.representative, y));
      if (!in_parabolic(m, f)) continue;
      ++order;
      ++dist[levi.class_of[g.index_of(levi_part(m, f))]];
    }
    levi_distribution_.push_back(std::move(dist));
    intersection_order_.push_back(order);
  }
}

MackeyResult MackeyCheck::evaluate(const ClassFunction& pi_in) const {
  auto levi = ws_->levi(f_)->structure();
  ClassFunction pi = pi_in;
  if (pi.structure_ptr() != levi) {
    if (f_.blocks() == 1 && pi.structure_ptr() == ws_->classes(f_.total())->structure())
      pi = ClassFunction(levi, pi_in.values());
    else
      throw Error("MackeyCheck: character is not on the Levi " + f_.to_string());
  }
  auto to_rational = [](const Cyclotomic& c) {
    if (!c.is_rational()) throw Error("Mackey term " + c.to_string() + " is not rational (defect)");
    return c.rational();
  };
  MackeyResult r;
  const ClassFunction induced = parabolic_induce(*ws_, f_, pi);
  Cyclotomic lhs;
  for (std::size_t c = 0; c < h_distribution_.size(); ++c)
    if (h_distribution_[c]) lhs += induced[c] * Cyclotomic(static_cast<std::int64_t>(h_distribution_[c]));
  r.lhs = to_rational(lhs / Rational(static_cast<std::int64_t>(h_.order())));
  r.rhs = Rational(0);
  for (std::size_t k = 0; k < representatives_.size(); ++k) {
    Cyclotomic acc;
    for (std::size_t c = 0; c < levi_distribution_[k].size(); ++c)
      if (levi_distribution_[k][c]) acc += pi[c] * Cyclotomic(static_cast<std::int64_t>(levi_distribution_[k][c]));
    const Rational term = to_rational(acc / Rational(static_cast<std::int64_t>(intersection_order_[k])));
    r.summands.push_back(term);
    r.rhs += term;
  }
  r.equal = r.lhs == r.rhs;
  r.witness = r.lhs <= Rational(0) ||
              std::any_of(r.summands.begin(), r.summands.end(), [](const Rational& t) { return t > Rational(0); });
  return r;
}

MackeyResult verify_mackey(Workspace& ws, const Composition& f, const ClassFunction& pi, const SubgroupData& h) {
  return MackeyCheck(ws, f, h).evaluate(pi);
}

// ---------------------------------------------------------------------------
// Twisted involutions

std::vector<int> monomial_pattern(const Matrix& q) {
  if (!q.is_monomial()) throw Error("matrix " + q.to_string() + " is not monomial");
  std::vector<int> r(q.dim(), -1);
  for (int j = 0; j < q.dim(); ++j)
    for (int i = 0; i < q.dim(); ++i)
      if (q(i, j) != 0) r[j] = i;
  return r;
}

Matrix twisted_apply(const Involution& sigma, const Matrix& q, const Matrix& g) {
  return q * sigma.apply(g) * q.inverse();
}

Matrix twisted_monomial_part(const Involution& sigma, const Matrix& q) { return q * sigma.parameter(); }

std::vector<GeometricRepresentative> geometric_representatives(Workspace& ws, const Composition& f,
                                                               const Involution& sigma, const SubgroupData& h) {
  const int n = f.total();
  auto gp = ws.group(n);
  if (sigma.group_ptr() != gp || h.parent != gp) throw Error("geometric_representatives: group mismatch");
  const Group& g = *gp;
  const auto& parabolic = ws.standard(f).parabolic;
  std::vector<GeometricRepresentative> out;
  for (const auto& dc : double_cosets(parabolic, h)) {
    GeometricRepresentative rep;
    rep.coset_representative = dc.representative;
    rep.coset_size = dc.size;
    for (auto x : double_coset_elements(parabolic, dc.representative, h)) {
      const Matrix q = g.element(x) * g.element(g.inverse_index(sigma.apply_index(x)));
      if (!q.is_monomial()) continue;
      rep.x = x;
      rep.q = q;
      break;
    }
    if (rep.x >= 0) {
      const Matrix& q = rep.q;
      const Matrix q_inv = q.inverse();
      rep.sigma_q_inverse = sigma.apply(q) == q_inv;
      rep.pattern = monomial_pattern(twisted_monomial_part(sigma, q));
      const std::int32_t qi = g.index_of(q), qinv = g.index_of(q_inv);
      bool square = true;
      std::vector<std::int32_t> fixed;
      for (std::int32_t y = 0; y < static_cast<std::int32_t>(g.order()); ++y) {
        const auto once = g.multiply(g.multiply(qi, sigma.apply_index(y)), qinv);
        const auto twice = g.multiply(g.multiply(qi, sigma.apply_index(once)), qinv);
        square = square && twice == y;
        if (once == y) fixed.push_back(y);
      }
      std::vector<std::int32_t> conjugated;
      for (auto y : h.elements) conjugated.push_back(g.conjugate(rep.x, y));
      std::sort(conjugated.begin(), conjugated.end());
      rep.twisted_square_identity = square;
      rep.fixed_group_matches = conjugated == fixed;
    }
    out.push_back(std::move(rep));
  }
  return out;
}

TwistedLevi twisted_levi(const std::vector<int>& labeling, const std::vector<int>& r) {
  Composition::from_labeling(labeling);
  const int n = static_cast<int>(labeling.size());
  if (static_cast<int>(r.size()) != n) throw Error("twisted_levi: permutation has the wrong size");
  std::vector<int> seen(n, 0);
  for (int v : r) {
    if (v < 0 || v >= n || seen[v]++) throw Error("twisted_levi: r is not a permutation");
  }
  std::map<std::pair<int, int>, std::vector<int>> sets;
  for (int i = 0; i < n; ++i) sets[{labeling[i], labeling[r[i]]}].push_back(i);
  TwistedLevi t;
  std::map<std::pair<int, int>, int> position;
  for (auto& [key, idx] : sets) {
    position[key] = static_cast<int>(t.blocks.size());
    t.blocks.push_back({key.first, key.second, idx});
    t.refined.parts.push_back(static_cast<int>(idx.size()));
  }
  for (const auto& b : t.blocks) {
    auto it = position.find({b.b, b.a});
    t.partner.push_back(it == position.end() ? -1 : it->second);
  }
  return t;
}

namespace {

// Generators of the block-diagonal group for a set partition given by block ids.
std::vector<std::pair<int, Matrix>> partition_generators(const Field& f, int n, const std::vector<int>& block_of) {
  std::vector<std::pair<int, Matrix>> gens;
  for (int i = 0; i < n; ++i) {
    Matrix d = Matrix::identity(&f, n);
    d(i, i) = f.generator();
    gens.emplace_back(block_of[i], d);
    for (int j = 0; j < n; ++j) {
      if (i == j || block_of[i] != block_of[j]) continue;
      for (std::uint32_t c = 1; c < f.order(); ++c) {
        Matrix t = Matrix::identity(&f, n);
        t(i, j) = static_cast<FieldCode>(c);
        gens.emplace_back(block_of[i], t);
      }
    }
  }
  return gens;
}

bool in_partition_levi(const Matrix& m, const std::vector<int>& block_of) {
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (block_of[i] != block_of[j] && m(i, j) != 0) return false;
  return true;
}

bool partition_preserved(const Involution& sigma, const Matrix& q, const std::vector<int>& block_of) {
  const Field& f = sigma.group().field();
  for (const auto& [block, gen] : partition_generators(f, static_cast<int>(block_of.size()), block_of))
    if (!in_partition_levi(twisted_apply(sigma, q, gen), block_of)) return false;
  return true;
}

}  // namespace

TwistedLeviCheck verify_twisted_levi(const TwistedLevi& t, const std::vector<int>& r, const Involution& sigma,
                                     const Matrix& q) {
  TwistedLeviCheck check;
  const Field& f = sigma.group().field();
  const int n = sigma.group().dim();
  try {
    check.pattern_matches = monomial_pattern(twisted_monomial_part(sigma, q)) == r;
  } catch (const Error&) {
    check.pattern_matches = false;
  }
  std::vector<int> block_of(n, -1);
  for (std::size_t b = 0; b < t.blocks.size(); ++b)
    for (int i : t.blocks[b].indices) block_of[i] = static_cast<int>(b);
  if (std::count(block_of.begin(), block_of.end(), -1)) throw Error("twisted_levi blocks do not cover [n]");

  check.preserved = partition_preserved(sigma, q, block_of);
  check.pairing = true;
  const Matrix id = Matrix::identity(&f, n);
  for (const auto& [block, gen] : partition_generators(f, n, block_of)) {
    const Matrix image = twisted_apply(sigma, q, gen);
    const int target = t.partner[block];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (image(i, j) != id(i, j) && (target < 0 || block_of[i] != target || block_of[j] != target))
          check.pairing = false;
  }

  // Strictly coarser partitions that merge blocks only within one block of f.
  std::map<int, std::vector<int>> by_a;
  for (std::size_t b = 0; b < t.blocks.size(); ++b) by_a[t.blocks[b].a].push_back(static_cast<int>(b));
  std::vector<std::vector<int>> groups;
  for (auto& [a, bs] : by_a) groups.push_back(bs);
  std::vector<int> merged(t.blocks.size());
  bool maximal = true;
  std::function<void(std::size_t, std::size_t, int, bool)> rec = [&](std::size_t gi, std::size_t pos, int next_label,
                                                                      bool coarser) {
    if (!maximal) return;
    if (gi == groups.size()) {
      if (!coarser) return;
      std::vector<int> coarse(n);
      for (int i = 0; i < n; ++i) coarse[i] = merged[block_of[i]];
      if (partition_preserved(sigma, q, coarse)) maximal = false;
      return;
    }
    const auto& grp = groups[gi];
    if (pos == grp.size()) {
      rec(gi + 1, 0, next_label, coarser);
      return;
    }
    // Restricted-growth labelling of the blocks of this group.
    int group_start = next_label;
    for (std::size_t k = 0; k < pos; ++k) group_start = std::min(group_start, merged[grp[k]]);
    if (pos == 0) group_start = next_label;
    int used = 0;
    for (std::size_t k = 0; k < pos; ++k) used = std::max(used, merged[grp[k]] - group_start + 1);
    for (int label = 0; label <= used; ++label) {
      merged[grp[pos]] = group_start + label;
      const bool joins = label < used;
      const int new_next = std::max(next_label, group_start + label + 1);
      rec(gi, pos + 1, new_next, coarser || joins);
    }
  };
  rec(0, 0, 0, false);
  check.maximal = maximal;
  return check;
}

}  // namespace glfq
