#include "glfq/classes.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace glfq {

std::int32_t ClassStructure::class_of_element(std::int32_t ambient_index) const {
  if (ambient_index < 0 || static_cast<std::size_t>(ambient_index) >= class_of.size()) return -1;
  return class_of[ambient_index];
}

std::int32_t ClassStructure::class_of_matrix(const Matrix& m) const { return class_of_element(ambient->index_of(m)); }

std::uint64_t ClassStructure::exponent() const {
  std::uint64_t e = 1;
  for (auto o : element_order) e = std::lcm(e, static_cast<std::uint64_t>(o));
  return e;
}

namespace {

// Fills representatives, sizes, inverses, orders and power maps from members
// and final class ids.
void complete(ClassStructure& s, std::size_t class_count) {
  const Group& g = *s.ambient;
  s.representatives.assign(class_count, -1);
  s.sizes.assign(class_count, 0);
  for (auto m : s.members) {
    const auto c = s.class_of[m];
    if (s.representatives[c] < 0) s.representatives[c] = m;
    ++s.sizes[c];
  }
  s.inverse_class.resize(class_count);
  s.element_order.resize(class_count);
  s.power_class.resize(class_count);
  for (std::size_t c = 0; c < class_count; ++c) {
    const auto rep = s.representatives[c];
    s.inverse_class[c] = s.class_of[g.inverse_index(rep)];
    std::vector<std::int32_t> powers{s.class_of[g.identity_index()]};
    std::int32_t cur = rep;
    while (cur != g.identity_index()) {
      powers.push_back(s.class_of[cur]);
      cur = g.multiply(cur, rep);
    }
    s.element_order[c] = static_cast<std::int32_t>(powers.size());
    s.power_class[c] = std::move(powers);
  }
}

// Renumbers provisional ids by (size, minimal representative).
std::size_t canonical_order(ClassStructure& s, std::size_t provisional_count) {
  std::vector<std::uint64_t> size(provisional_count, 0);
  std::vector<std::int32_t> rep(provisional_count, -1);
  for (auto m : s.members) {
    const auto c = s.class_of[m];
    ++size[c];
    if (rep[c] < 0) rep[c] = m;
  }
  std::vector<std::int32_t> order(provisional_count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return std::tie(size[a], rep[a]) < std::tie(size[b], rep[b]); });
  std::vector<std::int32_t> renumber(provisional_count);
  for (std::size_t i = 0; i < order.size(); ++i) renumber[order[i]] = static_cast<std::int32_t>(i);
  for (auto m : s.members) s.class_of[m] = renumber[s.class_of[m]];
  return provisional_count;
}

}  // namespace

std::string ClassLabel::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) os << '*';
    os << "p(";
    for (std::size_t j = 0; j < parts[i].first.size(); ++j) os << (j ? " " : "") << parts[i].first[j];
    os << ")^[";
    for (std::size_t j = 0; j < parts[i].second.size(); ++j) os << (j ? " " : "") << parts[i].second[j];
    os << ']';
  }
  return os.str();
}

std::vector<FieldPoly> monic_irreducibles(const Field& f, int degree) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, int>, std::vector<FieldPoly>> cache;
  const auto key = std::make_tuple(f.characteristic(), f.degree(), degree);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::vector<FieldPoly> lower;
  for (int d = 1; 2 * d <= degree; ++d) {
    auto irr = monic_irreducibles(f, d);
    lower.insert(lower.end(), irr.begin(), irr.end());
  }
  std::vector<FieldPoly> out;
  const std::uint64_t Q = f.order();
  const std::uint64_t count = ipow(Q, static_cast<unsigned>(degree));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    FieldPoly p(degree + 1, 0);
    std::uint64_t t = idx;
    for (int i = degree - 1; i >= 0; --i) {
      p[i] = static_cast<FieldCode>(t % Q);
      t /= Q;
    }
    p[degree] = f.one();
    bool irreducible = true;
    for (const auto& d : lower) {
      FieldPoly rem;
      poly_divmod(f, p, d, rem);
      if (rem.empty()) {
        irreducible = false;
        break;
      }
    }
    if (irreducible) out.push_back(p);
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = out;
  return out;
}

ClassLabel class_label(const Matrix& g) {
  if (!g.invertible()) throw Error("class_label: matrix is singular");
  const Field& f = g.field();
  const int n = g.dim();
  FieldPoly rest = characteristic_polynomial(g);
  ClassLabel label;
  for (int d = 1; d <= n && rest.size() > 1; ++d) {
    for (const auto& phi : monic_irreducibles(f, d)) {
      int mult = 0;
      while (rest.size() > 1) {
        FieldPoly rem;
        FieldPoly quot = poly_divmod(f, rest, phi, rem);
        if (!rem.empty()) break;
        rest = quot;
        ++mult;
      }
      if (mult == 0) continue;
      // Nullities of phi(g)^j give the conjugate partition.
      const Matrix base = evaluate_polynomial(phi, g);
      Matrix power = base;
      std::vector<int> nullity{0};
      for (int j = 1; j <= mult; ++j) {
        nullity.push_back(n - power.rank());
        power = power * base;
      }
      std::vector<int> at_least;  // number of blocks of size >= j
      for (int j = 1; j <= mult; ++j) at_least.push_back((nullity[j] - nullity[j - 1]) / d);
      at_least.push_back(0);
      std::vector<int> partition;
      for (int j = mult; j >= 1; --j)
        for (int c = 0; c < at_least[j - 1] - at_least[j]; ++c) partition.push_back(j);
      label.parts.emplace_back(phi, partition);
    }
  }
  std::sort(label.parts.begin(), label.parts.end());
  return label;
}

std::uint64_t centralizer_order_from_label(const ClassLabel& label, std::uint64_t Q) {
  std::uint64_t result = 1;
  for (const auto& [phi, lambda] : label.parts) {
    const std::uint64_t r = ipow(Q, static_cast<unsigned>(phi.size() - 1));
    std::map<int, int> mult;
    for (int part : lambda) ++mult[part];
    std::uint64_t conj_sq = 0;
    const int largest = lambda.empty() ? 0 : lambda.front();
    for (int j = 1; j <= largest; ++j) {
      std::uint64_t cj = 0;
      for (int part : lambda) cj += part >= j;
      conj_sq += cj * cj;
    }
    std::uint64_t mult_sq = 0;
    for (auto [part, m] : mult) {
      result *= gl_order(m, r);
      mult_sq += static_cast<std::uint64_t>(m) * m;
    }
    result *= ipow(r, static_cast<unsigned>(conj_sq - mult_sq));
  }
  return result;
}

ConjClassTable::ConjClassTable(GroupPtr group) : group_(std::move(group)) {
  auto s = std::make_shared<ClassStructure>();
  s->ambient = group_;
  s->name = group_->spec().describe();
  const std::size_t order = group_->order();
  s->members.resize(order);
  std::iota(s->members.begin(), s->members.end(), 0);
  s->class_of.assign(order, -1);
  std::map<ClassLabel, std::int32_t> provisional;
  std::vector<ClassLabel> provisional_labels;
  for (std::size_t i = 0; i < order; ++i) {
    ClassLabel l = class_label(group_->element(static_cast<std::int32_t>(i)));
    auto [it, inserted] = provisional.emplace(l, static_cast<std::int32_t>(provisional_labels.size()));
    if (inserted) provisional_labels.push_back(l);
    s->class_of[i] = it->second;
  }
  // Remember which provisional id each member had to map labels afterwards.
  std::vector<std::int32_t> before(s->class_of);
  const std::size_t k = canonical_order(*s, provisional_labels.size());
  labels_.resize(k);
  for (std::size_t i = 0; i < order; ++i) labels_[s->class_of[i]] = provisional_labels[before[i]];
  complete(*s, k);
  const std::uint64_t Q = group_->field().order();
  centralizers_.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    centralizers_[c] = centralizer_order_from_label(labels_[c], Q);
    if (centralizers_[c] * s->sizes[c] != order)
      throw Error("class " + labels_[c].to_string() + ": centralizer formula disagrees with class size (defect)");
    by_label_[labels_[c]] = static_cast<std::int32_t>(c);
  }
  structure_ = std::move(s);
}

std::int32_t ConjClassTable::class_of(const Matrix& g) const {
  if (g.dim() != group_->dim() || !g.field().same_as(group_->field())) throw Error("class_of: matrix is not in the group");
  auto it = by_label_.find(class_label(g));
  if (it == by_label_.end()) throw Error("class_of: unknown label (defect)");
  return it->second;
}

std::string ConjClassTable::to_csv() const {
  std::ostringstream os;
  os << "class_index,label,size,centralizer_order,representative\n";
  for (std::size_t c = 0; c < class_count(); ++c)
    os << c << ',' << labels_[c].to_string() << ',' << structure_->sizes[c] << ',' << centralizers_[c] << ','
       << representative(c).to_string() << '\n';
  return os.str();
}

ConjClassTablePtr conjugacy_classes(const GroupSpec& spec, std::uint64_t bound) {
  return std::make_shared<ConjClassTable>(std::make_shared<Group>(spec, bound));
}

ClassStructurePtr orbit_classes(const SubgroupData& h) {
  const Group& g = *h.parent;
  auto s = std::make_shared<ClassStructure>();
  s->ambient = h.parent;
  s->name = h.descriptor;
  s->members = h.elements;
  s->class_of.assign(g.order(), -1);
  const auto gens = generators(h);
  std::int32_t next = 0;
  for (auto start : h.elements) {
    if (s->class_of[start] >= 0) continue;
    std::vector<std::int32_t> orbit{start};
    s->class_of[start] = next;
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (auto x : gens) {
        const auto y = g.conjugate(x, orbit[head]);
        if (s->class_of[y] < 0) {
          s->class_of[y] = next;
          orbit.push_back(y);
        }
      }
    ++next;
  }
  const std::size_t k = canonical_order(*s, static_cast<std::size_t>(next));
  complete(*s, k);
  return s;
}

Levi::Levi(GroupPtr ambient, Composition f, std::vector<ConjClassTablePtr> factors)
    : ambient_(std::move(ambient)), f_(std::move(f)), factors_(std::move(factors)) {
  if (f_.total() != ambient_->dim()) throw Error("Levi: composition does not match dimension");
  if (static_cast<int>(factors_.size()) != f_.blocks()) throw Error("Levi: wrong number of factor tables");
  for (int b = 0; b < f_.blocks(); ++b)
    if (factors_[b]->group().dim() != f_.parts[b] || !factors_[b]->group().field().same_as(ambient_->field()))
      throw Error("Levi: factor table does not match block " + std::to_string(b));
  auto s = std::make_shared<ClassStructure>();
  s->ambient = ambient_;
  s->name = "levi" + f_.to_string();
  s->class_of.assign(ambient_->order(), -1);
  std::size_t count = 1;
  for (const auto& t : factors_) count *= t->class_count();
  for (std::size_t i = 0; i < ambient_->order(); ++i) {
    const Matrix& m = ambient_->element(static_cast<std::int32_t>(i));
    if (!in_levi(m, f_)) continue;
    s->members.push_back(static_cast<std::int32_t>(i));
    s->class_of[i] = class_of_matrix(m);
  }
  complete(*s, count);
  structure_ = std::move(s);
}

std::vector<std::int32_t> Levi::split(std::int32_t levi_class) const {
  std::vector<std::int32_t> out(factors_.size());
  for (std::size_t b = factors_.size(); b-- > 0;) {
    const auto k = static_cast<std::int32_t>(factors_[b]->class_count());
    out[b] = levi_class % k;
    levi_class /= k;
  }
  return out;
}

std::int32_t Levi::combine(const std::vector<std::int32_t>& factor_classes) const {
  std::int32_t c = 0;
  for (std::size_t b = 0; b < factors_.size(); ++b)
    c = c * static_cast<std::int32_t>(factors_[b]->class_count()) + factor_classes[b];
  return c;
}

std::int32_t Levi::class_of_matrix(const Matrix& m) const {
  std::vector<std::int32_t> fc(factors_.size());
  for (int b = 0; b < f_.blocks(); ++b) {
    const ConjClassTable& t = *factors_[b];
    const auto idx = t.group().index_of(levi_block(m, f_, b));
    if (idx < 0) throw Error("Levi: singular block");
    fc[b] = t.class_of_index(idx);
  }
  return combine(fc);
}

}  // namespace glfq
