#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pnhs/core.hpp"

namespace pnhs {

/// One linear constraint `coeffs · x (= | >=) constant` over naturals.
struct Constraint {
  enum class Kind { equal, at_least };
  Vector coeffs;
  value_t constant = 0;
  Kind kind = Kind::equal;
};

/// A conjunction of linear equalities and lower-bound inequalities over
/// nonnegative integer variables.
class ConstraintSystem {
public:
  explicit ConstraintSystem(std::size_t variables) : variables_(variables) {}

  std::size_t variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return rows_; }

  ConstraintSystem& equal(Vector coeffs, value_t constant);
  ConstraintSystem& at_least(Vector coeffs, value_t constant);
  ConstraintSystem& at_most(Vector coeffs, value_t constant);

  bool satisfied_by(const Vector& x) const;

private:
  std::size_t variables_;
  std::vector<Constraint> rows_;
};

struct MinSolutions {
  std::vector<Vector> inhomogeneous;  // sorted
  std::vector<Vector> hilbert;        // sorted
};

/// Minimal solutions plus Hilbert basis of the homogeneous part, so that
/// the solution set is { s + sum n_i h_i : s in inhomogeneous }.
/// Inequalities are handled with slack variables projected away afterwards.
MinSolutions min_solutions(const ConstraintSystem& sys);

/// Integer feasibility of the system, stopping at the first solution.
/// Returns std::nullopt when more than `budget` candidate vectors would be
/// expanded.
std::optional<bool> integer_feasible(const ConstraintSystem& sys, std::size_t budget);

/// Feasibility of the rational relaxation (x >= 0, real-valued). Exact.
bool rational_feasible(const ConstraintSystem& sys);

namespace detail {

/// Contejean–Devie completion for the homogeneous system rows·x = 0 where
/// variable `frozen` (if any) is capped at 1. Returns the minimal nonzero
/// solutions. When `stop_on_frozen` is set, returns as soon as a solution
/// with the frozen variable at 1 is found. `budget` bounds the number of
/// expanded candidates (std::nullopt on exhaustion).
std::optional<std::vector<Vector>> contejean_devie(const std::vector<Vector>& rows,
                                                   std::size_t variables,
                                                   std::optional<std::size_t> frozen,
                                                   bool stop_on_frozen, std::size_t budget);

}  // namespace detail

}  // namespace pnhs
