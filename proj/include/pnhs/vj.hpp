#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "pnhs/semilinear.hpp"

namespace pnhs {

enum class Answer { yes, no, unknown };

const char* to_string(Answer a);

/// Membership oracle for an implicit upward-closed U ⊆ N^dim: answers yes
/// iff some instance of the partial vector lies in U.
struct UpwardOracle {
  std::size_t dim = 0;
  std::function<Answer(const PartialVector&)> query;
};

struct Inconclusive {
  PartialVector query;
};

using VjOutcome = std::variant<MinBasis, Inconclusive>;

struct VjStats {
  std::size_t oracle_calls = 0;
  std::size_t cache_hits = 0;
  std::size_t iterations = 0;
  /// Every distinct query issued, with its answer, in issue order.
  std::vector<std::pair<PartialVector, Answer>> log;
};

/// Computes MIN(U) from the oracle: repeatedly looks for a complement box
/// of the current basis that still meets U, walks the box diagonal to a
/// concrete member, minimizes it and adds it to the basis.
VjOutcome min_basis(const UpwardOracle& oracle, VjStats* stats = nullptr);

/// Lowers each coordinate of a member of U, in index order, to the least
/// value that keeps membership (binary search).
std::variant<Vector, Inconclusive> minimize(const Vector& x,
                                            const std::function<Answer(const Vector&)>& membership);

}  // namespace pnhs
