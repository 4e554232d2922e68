#include "pnhs/semilinear.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace pnhs {

// PartialVector

PartialVector PartialVector::concrete(const Vector& v) {
  std::vector<Entry> e(v.begin(), v.end());
  return PartialVector(std::move(e));
}

bool PartialVector::is_concrete() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.has_value(); });
}

std::vector<std::size_t> PartialVector::omega_coords() const {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (!entries_[i]) r.push_back(i);
  return r;
}

Vector PartialVector::fixed_part() const { return instantiate(0); }

Vector PartialVector::instantiate(value_t n) const {
  Vector r(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) r[i] = entries_[i].value_or(n);
  return r;
}

bool PartialVector::has_instance(const Vector& x) const {
  if (x.size() != entries_.size()) throw DimensionMismatch("partial vector length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (entries_[i] && *entries_[i] != x[i]) return false;
  return true;
}

bool PartialVector::subsumes(const PartialVector& other) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (entries_[i] && entries_[i] != other.entries_[i]) return false;
  return true;
}

std::string PartialVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    if (entries_[i])
      os << *entries_[i];
    else
      os << 'w';
  }
  os << ')';
  return os.str();
}

std::strong_ordering PartialVector::operator<=>(const PartialVector& other) const {
  const std::size_t n = std::min(size(), other.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Entry& a = entries_[i];
    const Entry& b = other.entries_[i];
    if (a == b) continue;
    if (!a) return std::strong_ordering::greater;
    if (!b) return std::strong_ordering::less;
    return *a <=> *b;
  }
  return size() <=> other.size();
}

std::size_t PartialVectorHash::operator()(const PartialVector& v) const noexcept {
  Vector enc(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) enc[i] = v[i] ? *v[i] : -1;
  return VectorHash{}(enc);
}

// LinearSet / SemilinearSet

LinearSet::LinearSet(Vector base, std::vector<Vector> periods) : base_(std::move(base)) {
  if (!is_natural(base_)) throw Error("linear set base must be natural");
  for (auto& p : periods) {
    if (p.size() != base_.size()) throw DimensionMismatch("period length differs from base");
    if (!is_natural(p)) throw Error("linear set period must be natural");
    if (!is_zero(p)) periods_.push_back(std::move(p));
  }
  std::sort(periods_.begin(), periods_.end());
  periods_.erase(std::unique(periods_.begin(), periods_.end()), periods_.end());
}

Vector LinearSet::at(const Vector& coefficients) const {
  if (coefficients.size() != periods_.size())
    throw DimensionMismatch("coefficient count differs from period count");
  Vector r = base_;
  for (std::size_t j = 0; j < periods_.size(); ++j) r = add(r, scale(periods_[j], coefficients[j]));
  return r;
}

SemilinearSet::SemilinearSet(std::size_t dim, std::vector<LinearSet> components)
    : dim_(dim), components_(std::move(components)) {
  for (const auto& c : components_)
    if (c.dim() != dim_) throw DimensionMismatch("component dimension differs from set dimension");
  normalize();
}

SemilinearSet SemilinearSet::of(LinearSet l) {
  const std::size_t n = l.dim();
  return SemilinearSet(n, {std::move(l)});
}

SemilinearSet SemilinearSet::universe(std::size_t dim) {
  return SemilinearSet::of(instances_of(PartialVector::all_omega(dim)));
}

SemilinearSet SemilinearSet::finite(std::size_t dim, const std::vector<Vector>& points) {
  std::vector<LinearSet> comps;
  for (const auto& p : points) comps.emplace_back(p);
  return SemilinearSet(dim, std::move(comps));
}

namespace {

// Sufficient syntactic test for inner ⊆ outer.
bool subsumed(const LinearSet& inner, const LinearSet& outer) {
  if (!leq(outer.base(), inner.base())) return false;
  for (const auto& p : inner.periods())
    if (!std::binary_search(outer.periods().begin(), outer.periods().end(), p) &&
        !monoid_member(p, outer.periods()))
      return false;
  return monoid_member(sub(inner.base(), outer.base()), outer.periods());
}

}  // namespace

void SemilinearSet::normalize() {
  std::sort(components_.begin(), components_.end());
  components_.erase(std::unique(components_.begin(), components_.end()), components_.end());
  // Sequential elimination: a component is dropped only in favour of one
  // still alive, so every dropped component stays covered.
  std::vector<bool> alive(components_.size(), true);
  for (std::size_t i = 0; i < components_.size(); ++i)
    for (std::size_t j = 0; j < components_.size(); ++j)
      if (j != i && alive[j] && subsumed(components_[i], components_[j])) {
        alive[i] = false;
        break;
      }
  std::vector<LinearSet> kept;
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (alive[i]) kept.push_back(std::move(components_[i]));
  components_ = std::move(kept);
}

// MinBasis

bool MinBasis::is_antichain() const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j)
      if (i != j && leq(elements[i], elements[j])) return false;
  return true;
}

bool MinBasis::covers(const Vector& x) const {
  return std::any_of(elements.begin(), elements.end(), [&](const Vector& m) { return leq(m, x); });
}

MinBasis MinBasis::minimal_of(std::size_t dim, std::vector<Vector> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  MinBasis b{dim, {}};
  for (const auto& p : points) {
    bool minimal = std::none_of(points.begin(), points.end(),
                                [&](const Vector& q) { return q != p && leq(q, p); });
    if (minimal) b.elements.push_back(p);
  }
  return b;
}

// Membership

namespace {

struct MonoidSearch {
  const std::vector<Vector>& gens;
  std::vector<std::vector<bool>> support_from;  // coords touched by gens[j..]
  std::set<std::pair<std::size_t, Vector>> failed;

  bool run(std::size_t j, const Vector& rem) {
    if (is_zero(rem)) return true;
    if (j == gens.size()) return false;
    for (std::size_t i = 0; i < rem.size(); ++i)
      if (rem[i] > 0 && !support_from[j][i]) return false;
    if (failed.contains({j, rem})) return false;
    const Vector& g = gens[j];
    value_t max_k = -1;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] > 0) {
        value_t k = rem[i] / g[i];
        max_k = max_k < 0 ? k : std::min(max_k, k);
      }
    Vector r = rem;
    for (value_t k = 0; k <= max_k; ++k) {
      if (run(j + 1, r)) return true;
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= g[i];
    }
    failed.insert({j, rem});
    return false;
  }
};

}  // namespace

bool monoid_member(const Vector& target, const std::vector<Vector>& generators) {
  if (!is_natural(target)) return false;
  if (is_zero(target)) return true;
  std::vector<Vector> gens;
  for (const auto& g : generators) {
    if (g.size() != target.size()) throw DimensionMismatch("generator length mismatch");
    if (!is_zero(g)) gens.push_back(g);
  }
  MonoidSearch s{gens, std::vector<std::vector<bool>>(gens.size() + 1,
                                                      std::vector<bool>(target.size(), false)),
                 {}};
  for (std::size_t j = gens.size(); j-- > 0;)
    for (std::size_t i = 0; i < target.size(); ++i)
      s.support_from[j][i] = s.support_from[j + 1][i] || gens[j][i] > 0;
  return s.run(0, target);
}

bool member(const LinearSet& l, const Vector& x) {
  if (x.size() != l.dim()) throw DimensionMismatch("membership query has wrong dimension");
  if (!leq(l.base(), x)) return false;
  return monoid_member(sub(x, l.base()), l.periods());
}

bool member(const SemilinearSet& s, const Vector& x) {
  if (x.size() != s.dim()) throw DimensionMismatch("membership query has wrong dimension");
  return std::any_of(s.components().begin(), s.components().end(),
                     [&](const LinearSet& l) { return member(l, x); });
}

// Set operations

SemilinearSet unite(const SemilinearSet& s, const SemilinearSet& t) {
  if (s.dim() != t.dim()) throw DimensionMismatch("union of sets of different dimension");
  std::vector<LinearSet> comps = s.components();
  comps.insert(comps.end(), t.components().begin(), t.components().end());
  return SemilinearSet(s.dim(), std::move(comps));
}

namespace {

Vector apply(const std::vector<Vector>& matrix, const Vector& v) {
  Vector r(matrix.size(), 0);
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix[i].size() != v.size()) throw DimensionMismatch("matrix column count mismatch");
    for (std::size_t j = 0; j < v.size(); ++j)
      r[i] = checked_add(r[i], checked_mul(matrix[i][j], v[j]));
  }
  return r;
}

}  // namespace

LinearSet image_affine(const LinearSet& l, const std::vector<Vector>& matrix, const Vector& offset) {
  if (offset.size() != matrix.size()) throw DimensionMismatch("offset length differs from row count");
  std::vector<Vector> periods;
  for (const auto& p : l.periods()) periods.push_back(apply(matrix, p));
  return LinearSet(add(offset, apply(matrix, l.base())), std::move(periods));
}

SemilinearSet image_affine(const SemilinearSet& s, const std::vector<Vector>& matrix,
                           const Vector& offset) {
  for (const auto& row : matrix)
    if (row.size() != s.dim()) throw DimensionMismatch("matrix column count differs from set dimension");
  std::vector<LinearSet> comps;
  for (const auto& l : s.components()) comps.push_back(image_affine(l, matrix, offset));
  return SemilinearSet(offset.size(), std::move(comps));
}

std::vector<PartialVector> complement_boxes(const MinBasis& basis) {
  const std::size_t n = basis.dim;
  for (const auto& m : basis.elements)
    if (m.size() != n) throw DimensionMismatch("basis element has wrong dimension");
  if (!basis.is_antichain()) throw NotAntichain("basis is not an antichain");

  std::vector<PartialVector> boxes{PartialVector::all_omega(n)};
  for (const auto& m : basis.elements) {
    std::vector<PartialVector> next;
    for (const auto& box : boxes) {
      bool disjoint = false;
      for (std::size_t i = 0; i < n && !disjoint; ++i) disjoint = box[i] && *box[i] < m[i];
      if (disjoint) {
        next.push_back(box);
        continue;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (m[i] == 0) continue;
        PartialVector b = box;
        b[i] = box[i] ? std::min(*box[i], m[i] - 1) : m[i] - 1;
        next.push_back(std::move(b));
      }
    }
    // Keep only maximal boxes.
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    auto inside = [n](const PartialVector& a, const PartialVector& b) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!b[i]) continue;
        if (!a[i] || *a[i] > *b[i]) return false;
      }
      return true;
    };
    boxes.clear();
    for (std::size_t i = 0; i < next.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < next.size() && !dominated; ++j)
        dominated = i != j && inside(next[i], next[j]);
      if (!dominated) boxes.push_back(next[i]);
    }
  }
  return boxes;
}

SemilinearSet complement_upward(const MinBasis& basis) {
  const std::size_t n = basis.dim;
  std::vector<PartialVector> parts;
  for (const auto& box : complement_boxes(basis)) {
    std::vector<std::size_t> bounded;
    for (std::size_t i = 0; i < n; ++i)
      if (box[i]) bounded.push_back(i);
    PartialVector cur = box;
    for (std::size_t i : bounded) cur[i] = 0;
    while (true) {
      parts.push_back(cur);
      std::size_t k = 0;
      for (; k < bounded.size(); ++k) {
        std::size_t i = bounded[k];
        if (*cur[i] < *box[i]) {
          cur[i] = *cur[i] + 1;
          break;
        }
        cur[i] = 0;
      }
      if (k == bounded.size()) break;
    }
  }
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  std::vector<LinearSet> comps;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    bool sub = false;
    for (std::size_t j = 0; j < parts.size() && !sub; ++j) sub = i != j && parts[j].subsumes(parts[i]);
    if (!sub) comps.push_back(instances_of(parts[i]));
  }
  return SemilinearSet(n, std::move(comps));
}

SemilinearSet constraints_to_semilinear(const ConstraintSystem& sys) {
  MinSolutions sol = min_solutions(sys);
  std::vector<LinearSet> comps;
  for (const auto& b : sol.inhomogeneous) comps.emplace_back(b, sol.hilbert);
  return SemilinearSet(sys.variables(), std::move(comps));
}

SemilinearSet intersect(const LinearSet& a, const LinearSet& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("intersection of sets of different dimension");
  const std::size_t n = a.dim();
  const std::size_t ka = a.periods().size();
  const std::size_t kb = b.periods().size();
  if (ka == 0) return member(b, a.base()) ? SemilinearSet::of(a) : SemilinearSet(n);
  if (kb == 0) return member(a, b.base()) ? SemilinearSet::of(b) : SemilinearSet(n);

  // a.base + Pa·u = b.base + Pb·v over naturals (u, v).
  ConstraintSystem sys(ka + kb);
  for (std::size_t i = 0; i < n; ++i) {
    Vector row(ka + kb);
    for (std::size_t j = 0; j < ka; ++j) row[j] = a.periods()[j][i];
    for (std::size_t j = 0; j < kb; ++j) row[ka + j] = -b.periods()[j][i];
    sys.equal(std::move(row), checked_sub(b.base()[i], a.base()[i]));
  }
  MinSolutions sol = min_solutions(sys);
  auto u_part = [ka](const Vector& s) { return Vector(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(ka)); };
  std::vector<Vector> periods;
  for (const auto& h : sol.hilbert) periods.push_back(sub(a.at(u_part(h)), a.base()));
  std::vector<LinearSet> comps;
  for (const auto& s : sol.inhomogeneous) comps.emplace_back(a.at(u_part(s)), periods);
  return SemilinearSet(n, std::move(comps));
}

SemilinearSet intersect(const SemilinearSet& s, const SemilinearSet& t) {
  if (s.dim() != t.dim()) throw DimensionMismatch("intersection of sets of different dimension");
  std::vector<LinearSet> comps;
  for (const auto& a : s.components())
    for (const auto& b : t.components()) {
      SemilinearSet part = intersect(a, b);
      comps.insert(comps.end(), part.components().begin(), part.components().end());
    }
  return SemilinearSet(s.dim(), std::move(comps));
}

LinearSet instances_of(const PartialVector& v) {
  std::vector<Vector> periods;
  for (std::size_t i : v.omega_coords()) periods.push_back(unit(v.size(), i));
  return LinearSet(v.fixed_part(), std::move(periods));
}

std::string to_string(const LinearSet& l) {
  std::ostringstream os;
  os << "L(" << to_string(l.base());
  for (std::size_t j = 0; j < l.periods().size(); ++j)
    os << (j ? " " : "; ") << to_string(l.periods()[j]);
  os << ')';
  return os.str();
}

}  // namespace pnhs
