#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pnhs/reach.hpp"
#include "pnhs/semilinear.hpp"
#include "pnhs/vj.hpp"

namespace pnhs {

/// prmark(y, u) = y + sum u(j) * periods[j].
Vector prmark(const Vector& y, const Vector& u, const std::vector<Vector>& periods);

struct OracleCounters {
  std::size_t dc = 0;
  std::size_t dcb = 0;
  std::size_t dcb_shortcut = 0;
  std::size_t uy = 0;
  std::size_t reach = 0;  // direct reachability calls
  std::size_t cache_hits = 0;
  ReachStats reach_stats;

  OracleCounters& operator+=(const OracleCounters& o);
};

struct WitnessOptions {
  Budget budget;
  /// Receives one-line progress messages (may be empty).
  std::function<void(const std::string&)> progress;
};

// Gadget queries. Each returns yes/no when the reachability layer is
// definite and unknown otherwise.

/// Some instance of x̄ can reach a configuration of strictly smaller norm.
Answer dc_oracle(const PetriNet& net, const PartialVector& x, const Budget& budget = {},
                 OracleCounters* counters = nullptr);

/// Some instance (y, u) of `pair` reaches prmark(y', u') with ‖y'‖ < ‖y‖.
/// `periods` must be nonzero.
Answer dcb_oracle(const PetriNet& net, const std::vector<Vector>& periods, const PartialVector& pair,
                  const Budget& budget = {}, OracleCounters* counters = nullptr);

/// Some instance u of ū has prmark(y, u) ->* L (periods are L's).
Answer uy_oracle(const PetriNet& net, const LinearSet& target, const Vector& y, const PartialVector& u,
                 const Budget& budget = {}, OracleCounters* counters = nullptr);

/// The gadget query behind dc_oracle, exposed for inspection.
ReachQuery dc_query(const PetriNet& net, const PartialVector& x);
ReachQuery dcb_query(const PetriNet& net, const std::vector<Vector>& periods, const PartialVector& pair);

struct UyEntry {
  Vector y;
  MinBasis basis;
};

struct WitnessBlocker {
  std::string oracle;  // "dc", "dcb", "uy", "reach"
  PartialVector query;
  std::string context;
};

struct WitnessResult {
  SemilinearSet witness{1};
  /// MIN(DC) for the singleton construction, MIN(DCB) for the general one.
  MinBasis decrease_basis;
  std::vector<UyEntry> uy_tables;
  /// Pieces over (y, u) space before the prmark image (general case), or
  /// over configuration space (singleton case).
  std::vector<SemilinearSet> pieces;
  OracleCounters counters;
  std::optional<WitnessBlocker> blocker;

  bool conclusive() const { return !blocker.has_value(); }
};

/// W = NDC ∩ ({‖x‖ > ‖b‖} ∪ {‖x‖ ≤ ‖b‖ and x cannot reach b}).
WitnessResult witness_singleton(const PetriNet& net, const Vector& b, const WitnessOptions& options = {});

/// Semilinear non-home-space witness for a linear set L.
WitnessResult witness_linear(const PetriNet& net, const LinearSet& target,
                             const WitnessOptions& options = {});

struct NdcbResult {
  std::optional<SemilinearSet> set;
  MinBasis dcb;
  OracleCounters counters;
  std::optional<WitnessBlocker> blocker;
};

/// Configurations presentable by some pair outside DCB.
NdcbResult ndcbconf(const PetriNet& net, const LinearSet& target, const WitnessOptions& options = {});

/// All vectors of length n with norm at most `max_norm`, lexicographic.
std::vector<Vector> vectors_up_to_norm(std::size_t n, value_t max_norm);

}  // namespace pnhs
