#include "glfq/group.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace glfq {

namespace {

bool prime_power(std::uint64_t q, std::uint64_t& p, unsigned& e) {
  if (q < 2) return false;
  auto f = prime_factors(q);
  if (f.size() != 1) return false;
  p = f[0];
  e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  return true;
}

constexpr std::uint64_t kDenseLimit = 1ull << 26;

}  // namespace

void GroupSpec::validate() const {
  std::uint64_t p;
  unsigned e;
  if (!prime_power(q, p, e)) throw Error("q must be a prime power, got " + std::to_string(q));
  if (p == 2) throw Error("q must be odd, got " + std::to_string(q));
  if (m != 1 && m != 2) throw Error("m must be 1 or 2");
  if (n < 1 || n > kMaxDim) throw Error("n must be in [1, " + std::to_string(kMaxDim) + "]");
}

std::string GroupSpec::describe() const {
  std::ostringstream os;
  os << "GL_" << n << "(F_" << element_field_order() << ")";
  return os.str();
}

FieldPtr element_field(const GroupSpec& spec) {
  spec.validate();
  std::uint64_t p = 0;
  unsigned e = 0;
  prime_power(spec.q, p, e);
  return build_field(static_cast<std::uint32_t>(p), e * static_cast<unsigned>(spec.m));
}

std::uint64_t gl_order(int n, std::uint64_t Q) {
  unsigned __int128 order = 1;
  unsigned __int128 qn = 1;
  for (int i = 0; i < n; ++i) qn *= Q;
  unsigned __int128 qi = 1;
  for (int i = 0; i < n; ++i) {
    order *= (qn - qi);
    qi *= Q;
    if (order > std::numeric_limits<std::uint64_t>::max()) throw BoundError("group order overflows");
  }
  return static_cast<std::uint64_t>(order);
}

std::uint64_t group_order(const GroupSpec& spec) {
  spec.validate();
  return gl_order(spec.n, spec.element_field_order());
}

std::vector<Matrix> enumerate_elements(const GroupSpec& spec, std::uint64_t bound) {
  const std::uint64_t order = group_order(spec);
  if (order > bound)
    throw BoundError(spec.describe() + " has " + std::to_string(order) + " elements, over the enumeration bound " +
                     std::to_string(bound));
  FieldPtr f = element_field(spec);
  const int n = spec.n;
  std::vector<Matrix> out;
  out.reserve(order);
  const std::uint64_t Q = f->order();
  // Row-major lexicographic: odometer over entries, last entry fastest.
  Matrix m(f.get(), n);
  const int cells = n * n;
  while (true) {
    if (m.determinant() != 0) out.push_back(m);
    int idx = cells - 1;
    while (idx >= 0) {
      FieldCode& c = m(idx / n, idx % n);
      if (c + 1u < Q) {
        ++c;
        break;
      }
      c = 0;
      --idx;
    }
    if (idx < 0) break;
  }
  return out;
}

Group::Group(const GroupSpec& spec, std::uint64_t bound) : spec_(spec), field_(element_field(spec)) {
  elements_ = enumerate_elements(spec, bound);
  const std::uint64_t cells = ipow(field_->order(), static_cast<unsigned>(spec.n * spec.n));
  if (cells <= kDenseLimit) {
    dense_index_.assign(cells, -1);
    for (std::size_t i = 0; i < elements_.size(); ++i) dense_index_[elements_[i].encode()] = static_cast<std::int32_t>(i);
  } else {
    sparse_index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) sparse_index_[elements_[i].encode()] = static_cast<std::int32_t>(i);
  }
  identity_ = index_of(Matrix::identity(field_.get(), spec.n));
  inverse_.resize(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) inverse_[i] = index_of(elements_[i].inverse());
}

std::int32_t Group::index_of(const Matrix& m) const {
  if (m.dim() != spec_.n || !m.field().same_as(*field_)) return -1;
  const std::uint64_t code = m.encode();
  if (!dense_index_.empty()) return dense_index_[code];
  auto it = sparse_index_.find(code);
  return it == sparse_index_.end() ? -1 : it->second;
}

std::int32_t Group::multiply(std::int32_t a, std::int32_t b) const { return index_of(elements_[a] * elements_[b]); }

std::int32_t Group::conjugate(std::int32_t a, std::int32_t b) const {
  return index_of(elements_[a] * elements_[b] * elements_[inverse_[a]]);
}

int Composition::total() const {
  int t = 0;
  for (int p : parts) t += p;
  return t;
}

std::vector<int> Composition::labeling() const {
  std::vector<int> f;
  for (int b = 0; b < blocks(); ++b)
    for (int i = 0; i < parts[b]; ++i) f.push_back(b);
  return f;
}

Composition Composition::from_labeling(const std::vector<int>& f) {
  Composition c;
  if (f.empty()) throw Error("empty labeling");
  if (f[0] != 1) throw Error("labeling must start at block 1");
  int current = 1, size = 0;
  for (int v : f) {
    if (v == current) {
      ++size;
    } else if (v == current + 1) {
      c.parts.push_back(size);
      current = v;
      size = 1;
    } else {
      throw Error("labeling must be non-decreasing with consecutive labels");
    }
  }
  c.parts.push_back(size);
  return c;
}

std::string Composition::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ")";
  return os.str();
}

std::vector<Composition> compositions(int n) {
  std::vector<Composition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left) -> void {
    if (left == 0) {
      out.push_back(Composition{cur});
      return;
    }
    for (int p = 1; p <= left; ++p) {
      cur.push_back(p);
      self(self, left - p);
      cur.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

bool SubgroupData::contains(std::int32_t g) const { return std::binary_search(elements.begin(), elements.end(), g); }

SubgroupData subgroup_by_predicate(GroupPtr g, std::string descriptor, const std::function<bool(const Matrix&)>& pred) {
  SubgroupData h{g, std::move(descriptor), {}};
  for (std::size_t i = 0; i < g->order(); ++i)
    if (pred(g->element(static_cast<std::int32_t>(i)))) h.elements.push_back(static_cast<std::int32_t>(i));
  return h;
}

bool is_closed_subgroup(const SubgroupData& h) {
  const Group& g = *h.parent;
  if (!h.contains(g.identity_index())) return false;
  std::vector<char> member(g.order(), 0);
  for (auto e : h.elements) member[e] = 1;
  for (auto a : h.elements) {
    if (!member[g.inverse_index(a)]) return false;
    for (auto b : h.elements)
      if (!member[g.multiply(a, b)]) return false;
  }
  return true;
}

std::vector<std::int32_t> generators(const SubgroupData& h) {
  const Group& g = *h.parent;
  std::vector<char> reached(g.order(), 0);
  std::vector<std::int32_t> closure{g.identity_index()};
  reached[g.identity_index()] = 1;
  std::vector<std::int32_t> gens;
  for (auto cand : h.elements) {
    if (reached[cand]) continue;
    gens.push_back(cand);
    // Extend closure: BFS from current elements under right multiplication by all gens.
    std::deque<std::int32_t> queue(closure.begin(), closure.end());
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop_front();
      for (auto s : gens) {
        const auto y = g.multiply(x, s);
        if (!reached[y]) {
          reached[y] = 1;
          closure.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  return gens;
}

bool in_parabolic(const Matrix& m, const Composition& f) {
  const auto lab = f.labeling();
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (lab[i] > lab[j] && m(i, j) != 0) return false;
  return true;
}

bool in_levi(const Matrix& m, const Composition& f) {
  const auto lab = f.labeling();
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      if (lab[i] != lab[j] && m(i, j) != 0) return false;
  return true;
}

Matrix levi_block(const Matrix& m, const Composition& f, int b) {
  int start = 0;
  for (int i = 0; i < b; ++i) start += f.parts[i];
  Matrix out(m.field_ptr(), f.parts[b]);
  for (int i = 0; i < f.parts[b]; ++i)
    for (int j = 0; j < f.parts[b]; ++j) out(i, j) = m(start + i, start + j);
  return out;
}

StandardSubgroups standard_subgroups(GroupPtr g, const Composition& f) {
  if (f.total() != g->dim()) throw Error("composition " + f.to_string() + " does not match dimension " + std::to_string(g->dim()));
  for (int p : f.parts)
    if (p < 1) throw Error("composition parts must be positive");
  const auto lab = f.labeling();
  auto unipotent = [&](const Matrix& m) {
    if (!in_parabolic(m, f)) return false;
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j)
        if (lab[i] == lab[j] && m(i, j) != (i == j ? m.field().one() : 0)) return false;
    return true;
  };
  const std::string tag = f.to_string();
  return {subgroup_by_predicate(g, "parabolic" + tag, [&](const Matrix& m) { return in_parabolic(m, f); }),
          subgroup_by_predicate(g, "levi" + tag, [&](const Matrix& m) { return in_levi(m, f); }),
          subgroup_by_predicate(g, "unipotent" + tag, unipotent)};
}

namespace {

void require_same_parent(const SubgroupData& a, const SubgroupData& b) {
  if (a.parent.get() != b.parent.get()) throw Error("subgroups have different parent groups");
}

std::vector<std::int32_t> orbit(const Group& g, std::int32_t start, const std::vector<std::int32_t>& left,
                                const std::vector<std::int32_t>& right, std::vector<std::int32_t>& mark,
                                std::int32_t label) {
  std::vector<std::int32_t> out{start};
  mark[start] = label;
  for (std::size_t head = 0; head < out.size(); ++head) {
    const auto x = out[head];
    for (auto a : left) {
      const auto y = g.multiply(a, x);
      if (mark[y] < 0) {
        mark[y] = label;
        out.push_back(y);
      }
    }
    for (auto b : right) {
      const auto y = g.multiply(x, b);
      if (mark[y] < 0) {
        mark[y] = label;
        out.push_back(y);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<DoubleCoset> double_cosets(const SubgroupData& a, const SubgroupData& b) {
  require_same_parent(a, b);
  const Group& g = *a.parent;
  const auto ga = generators(a), gb = generators(b);
  std::vector<std::int32_t> mark(g.order(), -1);
  std::vector<DoubleCoset> out;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (mark[i] >= 0) continue;
    auto orb = orbit(g, static_cast<std::int32_t>(i), ga, gb, mark, static_cast<std::int32_t>(out.size()));
    out.push_back({static_cast<std::int32_t>(i), orb.size()});
  }
  return out;
}

std::vector<std::int32_t> double_coset_elements(const SubgroupData& a, std::int32_t x, const SubgroupData& b) {
  require_same_parent(a, b);
  const Group& g = *a.parent;
  std::vector<std::int32_t> mark(g.order(), -1);
  auto orb = orbit(g, x, generators(a), generators(b), mark, 0);
  std::sort(orb.begin(), orb.end());
  return orb;
}

std::vector<std::int32_t> left_coset_representatives(const SubgroupData& p) {
  const Group& g = *p.parent;
  std::vector<char> seen(g.order(), 0);
  std::vector<std::int32_t> reps;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (seen[i]) continue;
    reps.push_back(static_cast<std::int32_t>(i));
    for (auto h : p.elements) seen[g.multiply(static_cast<std::int32_t>(i), h)] = 1;
  }
  return reps;
}

}  // namespace glfq
