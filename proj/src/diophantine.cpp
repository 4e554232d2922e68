#include "pnhs/diophantine.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "pnhs/semilinear.hpp"

namespace pnhs {

ConstraintSystem& ConstraintSystem::equal(Vector coeffs, value_t constant) {
  if (coeffs.size() != variables_) throw DimensionMismatch("constraint row has wrong length");
  rows_.push_back({std::move(coeffs), constant, Constraint::Kind::equal});
  return *this;
}

ConstraintSystem& ConstraintSystem::at_least(Vector coeffs, value_t constant) {
  if (coeffs.size() != variables_) throw DimensionMismatch("constraint row has wrong length");
  rows_.push_back({std::move(coeffs), constant, Constraint::Kind::at_least});
  return *this;
}

ConstraintSystem& ConstraintSystem::at_most(Vector coeffs, value_t constant) {
  return at_least(scale(coeffs, -1), checked_mul(constant, -1));
}

bool ConstraintSystem::satisfied_by(const Vector& x) const {
  if (x.size() != variables_) throw DimensionMismatch("assignment has wrong length");
  if (!is_natural(x)) return false;
  for (const auto& r : rows_) {
    value_t lhs = 0;
    for (std::size_t i = 0; i < x.size(); ++i) lhs = checked_add(lhs, checked_mul(r.coeffs[i], x[i]));
    if (r.kind == Constraint::Kind::equal ? lhs != r.constant : lhs < r.constant) return false;
  }
  return true;
}

namespace detail {

namespace {

struct Candidate {
  Vector x;
  Vector image;  // rows · x
};

value_t dot(const Vector& a, const Vector& b) {
  value_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

}  // namespace

std::optional<std::vector<Vector>> contejean_devie(const std::vector<Vector>& rows,
                                                   std::size_t variables,
                                                   std::optional<std::size_t> frozen,
                                                   bool stop_on_frozen, std::size_t budget) {
  const std::size_t m = rows.size();
  // Column images A·e_j.
  std::vector<Vector> column(variables, Vector(m, 0));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < variables; ++j) column[j][r] = rows[r][j];

  std::vector<Vector> solutions;
  auto dominated = [&](const Vector& x) {
    for (const auto& s : solutions)
      if (leq(s, x)) return true;
    return false;
  };

  std::vector<Candidate> level;
  for (std::size_t j = 0; j < variables; ++j) level.push_back({unit(variables, j), column[j]});

  std::size_t expanded = 0;
  while (!level.empty()) {
    std::vector<Candidate> open;
    for (auto& c : level) {
      if (is_zero(c.image)) {
        if (!dominated(c.x)) {
          if (stop_on_frozen && frozen && c.x[*frozen] == 1) return std::vector<Vector>{c.x};
          solutions.push_back(c.x);
        }
      } else {
        open.push_back(std::move(c));
      }
    }
    std::unordered_set<Vector, VectorHash> seen;
    std::vector<Candidate> next;
    for (const auto& c : open) {
      if (dominated(c.x)) continue;
      for (std::size_t j = 0; j < variables; ++j) {
        if (frozen && j == *frozen && c.x[j] >= 1) continue;
        if (dot(c.image, column[j]) >= 0) continue;
        Vector x = c.x;
        x[j] = checked_add(x[j], 1);
        if (dominated(x) || seen.contains(x)) continue;
        if (++expanded > budget) return std::nullopt;
        seen.insert(x);
        next.push_back({std::move(x), add(c.image, column[j])});
      }
    }
    level = std::move(next);
  }
  return solutions;
}

}  // namespace detail

namespace {

struct Extended {
  std::vector<Vector> rows;
  std::size_t variables = 0;
  std::size_t constant_index = 0;
};

// Variables: originals, one slack per inequality, then the constant carrier.
Extended extend(const ConstraintSystem& sys) {
  const std::size_t n = sys.variables();
  std::size_t slacks = 0;
  for (const auto& r : sys.constraints())
    if (r.kind == Constraint::Kind::at_least) ++slacks;
  Extended e;
  e.variables = n + slacks + 1;
  e.constant_index = n + slacks;
  std::size_t s = 0;
  for (const auto& r : sys.constraints()) {
    Vector row(e.variables, 0);
    std::copy(r.coeffs.begin(), r.coeffs.end(), row.begin());
    if (r.kind == Constraint::Kind::at_least) row[n + s++] = -1;
    row[e.constant_index] = checked_mul(r.constant, -1);
    e.rows.push_back(std::move(row));
  }
  return e;
}

void sort_unique(std::vector<Vector>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

MinSolutions min_solutions(const ConstraintSystem& sys) {
  const std::size_t n = sys.variables();
  Extended e = extend(sys);
  auto sols = detail::contejean_devie(e.rows, e.variables, e.constant_index, false,
                                      std::numeric_limits<std::size_t>::max());
  MinSolutions out;
  for (const auto& s : *sols) {
    Vector x(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
    (s[e.constant_index] == 1 ? out.inhomogeneous : out.hilbert).push_back(std::move(x));
  }
  sort_unique(out.inhomogeneous);
  sort_unique(out.hilbert);
  if (e.variables == n + 1) return out;  // no slacks: already minimal

  // Projection can introduce redundant generators; drop those expressible
  // by the others.
  // Candidates are visited in order; each is tested against the kept ones
  // plus those not yet visited.
  auto prune = [](std::vector<Vector>& items, auto&& redundant_given) {
    std::vector<Vector> kept;
    for (std::size_t i = 0; i < items.size(); ++i) {
      std::vector<Vector> others = kept;
      others.insert(others.end(), items.begin() + static_cast<std::ptrdiff_t>(i) + 1, items.end());
      if (!redundant_given(items[i], others)) kept.push_back(items[i]);
    }
    items = std::move(kept);
  };
  prune(out.hilbert, [](const Vector& h, const std::vector<Vector>& others) {
    return monoid_member(h, others);
  });
  const std::vector<Vector>& periods = out.hilbert;
  prune(out.inhomogeneous, [&](const Vector& s, const std::vector<Vector>& others) {
    for (const auto& o : others)
      if (leq(o, s) && monoid_member(sub(s, o), periods)) return true;
    return false;
  });
  return out;
}

std::optional<bool> integer_feasible(const ConstraintSystem& sys, std::size_t budget) {
  Extended e = extend(sys);
  auto sols = detail::contejean_devie(e.rows, e.variables, e.constant_index, true, budget);
  if (!sols) return std::nullopt;
  for (const auto& s : *sols)
    if (s[e.constant_index] == 1) return true;
  return false;
}

bool rational_feasible(const ConstraintSystem& sys) {
  using boost::multiprecision::cpp_rational;
  // Phase-one simplex on A x = c, x >= 0 with one artificial per row,
  // Bland's rule for termination.
  Extended e = extend(sys);
  const std::size_t m = e.rows.size();
  const std::size_t vars = e.variables - 1;  // drop the constant carrier
  if (m == 0) return true;
  const std::size_t cols = vars + m;
  std::vector<std::vector<cpp_rational>> t(m, std::vector<cpp_rational>(cols + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    cpp_rational rhs = -e.rows[r][e.constant_index];
    int sign = rhs < 0 ? -1 : 1;
    for (std::size_t j = 0; j < vars; ++j) t[r][j] = sign * e.rows[r][j];
    t[r][vars + r] = 1;
    t[r][cols] = sign * rhs;
    basis[r] = vars + r;
  }
  // Objective: minimize sum of artificials, expressed as reduced costs.
  std::vector<cpp_rational> cost(cols + 1);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < vars || j == cols) cost[j] -= t[r][j];

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    cpp_rational best;
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][enter] <= 0) continue;
      cpp_rational ratio = t[r][cols] / t[r][enter];
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded; cannot happen for phase one
    cpp_rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      cpp_rational f = t[r][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[r][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      cpp_rational f = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return cost[cols] == 0;
}

}  // namespace pnhs
