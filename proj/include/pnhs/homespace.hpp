#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pnhs/reach.hpp"
#include "pnhs/semilinear.hpp"
#include "pnhs/witness.hpp"

namespace pnhs {

struct HomeSpaceQuery {
  PetriNet net;
  SemilinearSet from;
  SemilinearSet home;
  Budget budget;
};

struct HomeSpace {};

/// x ->* x_1 ->* ... ->* x_m with x in X and x_i in W_i.
struct NotHomeSpace {
  std::vector<Configuration> chain;  // x, x_1, ..., x_m
  Trace run;                         // original-net run from x
  std::vector<std::size_t> checkpoints;  // run.steps prefix length at each x_i
};

struct UndecidedHomeSpace {
  std::string reason;
  std::optional<WitnessBlocker> blocker;
};

using HomeSpaceVerdict = std::variant<HomeSpace, NotHomeSpace, UndecidedHomeSpace>;

std::string verdict_name(const HomeSpaceVerdict& v);

struct CheckReport {
  HomeSpaceVerdict verdict;
  std::vector<WitnessResult> witnesses;  // one per component of H, file order
  OracleCounters counters;
  ReachStats final_query;
};

/// Freeze-net layout: m+1 banks of d places, stage places s_0..s_m, the
/// initialization controls for X, then per witness a pending place, one
/// selected place per component, and a done place.
struct FreezeNet {
  enum class Kind {
    select_source,
    pump_source,
    enter_stage0,
    stage_action,
    checkpoint,
    subtract_base,
    subtract_period,
    finish
  };
  struct Role {
    Kind kind;
    std::size_t a = 0;  // stage / witness index / X component
    std::size_t b = 0;  // original action / component
    std::size_t c = 0;  // period index
  };

  ReachQuery query;
  std::size_t dim = 0;
  std::size_t stages = 0;  // m
  std::vector<Role> roles;
  std::vector<std::size_t> source_selected;         // per X component
  std::vector<std::size_t> pending;                 // per witness
  std::vector<std::vector<std::size_t>> selected;   // per witness, per component
  std::vector<std::size_t> done;                    // per witness

  std::size_t bank(std::size_t i, std::size_t place) const { return i * dim + place; }
  std::size_t stage_place(std::size_t j) const { return (stages + 1) * dim + j; }
  std::size_t source_control() const { return (stages + 1) * dim + stages + 1; }
};

FreezeNet build_freeze_net(const PetriNet& net, const SemilinearSet& from,
                           const std::vector<SemilinearSet>& witnesses);

/// Decodes a reachable verdict of the freeze query into a chain.
NotHomeSpace decode_chain(const FreezeNet& f, const PetriNet& net, const Reachable& r);

/// Budgets come from the query; `options` supplies progress reporting.
CheckReport check(const HomeSpaceQuery& q, const WitnessOptions& options = {});

/// As check(), with H given as an explicit component list processed in
/// the given order.
CheckReport check_components(const PetriNet& net, const SemilinearSet& from,
                             const std::vector<LinearSet>& home,
                             const WitnessOptions& options = {});

struct BruteForceVerdict {
  enum class Kind { home_space, not_home_space, inconclusive };
  Kind kind = Kind::inconclusive;
  std::optional<Configuration> counterexample;
};

/// Direct evaluation of post(X) ⊆ pre(H) by bounded exploration.
BruteForceVerdict brute_force_check(const PetriNet& net, const std::vector<Configuration>& from,
                                    const SemilinearSet& home, std::size_t node_budget);

}  // namespace pnhs
