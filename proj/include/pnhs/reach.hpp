#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pnhs/core.hpp"
#include "pnhs/semilinear.hpp"

namespace pnhs {

struct Budget {
  std::size_t node_budget = 100000;
  std::chrono::milliseconds time_cap{10000};
  /// Candidate vectors the integer state-equation check may expand.
  std::size_t equation_budget = 20000;
};

struct ReachQuery {
  PetriNet net;
  SemilinearSet source;
  SemilinearSet target;
};

/// Role of each action of an augmented net built by reduce_to_pair.
struct AugmentedAction {
  enum class Role { source_pump, start, original, switch_to_target, target_drain };
  Role role;
  std::size_t index = 0;  // period index or original action index
};

/// Single-pair reachability instance encoding "some x in src reaches some
/// y in tgt". Places: d main places, then c_src, c_run, c_tgt.
struct PairInstance {
  PetriNet net;
  Configuration initial;
  Configuration final;
  std::size_t original_dim = 0;
  std::vector<AugmentedAction> roles;

  std::size_t c_src() const { return original_dim; }
  std::size_t c_run() const { return original_dim + 1; }
  std::size_t c_tgt() const { return original_dim + 2; }
  std::size_t switch_action() const;
};

enum class CertificateKind { exhausted_state_space, state_equation_infeasible, not_coverable };
enum class UnknownReason { budget_exhausted, backend_gap };

std::string to_string(CertificateKind k);
std::string to_string(UnknownReason r);

struct Reachable {
  Trace trace;            // over the augmented net
  Trace original;         // projection: x in source ->* y in target
  std::size_t source_component = 0;
  std::size_t target_component = 0;
};

struct Unreachable {
  std::vector<CertificateKind> certificates;  // one per component pair
};

struct Unknown {
  UnknownReason reason = UnknownReason::backend_gap;
  std::string detail;
};

using ReachVerdict = std::variant<Reachable, Unreachable, Unknown>;

inline bool is_reachable(const ReachVerdict& v) { return std::holds_alternative<Reachable>(v); }
inline bool is_unreachable(const ReachVerdict& v) { return std::holds_alternative<Unreachable>(v); }
inline bool is_unknown(const ReachVerdict& v) { return std::holds_alternative<Unknown>(v); }

struct ReachStats {
  std::size_t queries = 0;
  std::size_t pair_instances = 0;
  std::size_t by_state_equation = 0;
  std::size_t by_coverability = 0;
  std::size_t by_bfs_exhaustion = 0;
  std::size_t by_bfs_trace = 0;
  std::size_t unknown = 0;
  std::size_t nodes = 0;

  ReachStats& operator+=(const ReachStats& o);
};

PairInstance reduce_to_pair(const PetriNet& net, const LinearSet& src, const LinearSet& tgt);

/// Maps a trace of the augmented net back to the original net.
Trace project_trace(const PairInstance& p, const Trace& augmented);

using Deadline = std::chrono::steady_clock::time_point;

ReachVerdict bfs_backend(const PairInstance& p, std::size_t node_budget,
                         std::optional<Deadline> deadline = std::nullopt,
                         std::size_t* nodes_used = nullptr);
ReachVerdict state_equation_backend(const PairInstance& p, std::size_t equation_budget = 20000);

/// Karp–Miller tree with ancestor acceleration. Labels use `omega_value`
/// for ω. Identical labels are expanded once.
struct KarpMiller {
  static constexpr value_t omega_value = INT64_MAX;
  std::vector<Vector> labels;  // in creation order
  bool complete = false;
  bool bounded = false;  // meaningful only when complete

  bool covers(const Vector& target) const;
};

KarpMiller karp_miller(const PetriNet& net, const Configuration& start, std::size_t node_budget,
                       std::optional<Deadline> deadline = std::nullopt);

struct CoverabilityVerdict {
  ReachVerdict verdict;
  bool complete = false;
  bool bounded = false;
  std::size_t nodes = 0;
  KarpMiller tree;
};

CoverabilityVerdict coverability_backend(const PairInstance& p, std::size_t node_budget,
                                         std::optional<Deadline> deadline = std::nullopt);

/// Portfolio over all component pairs: state equation, then coverability,
/// then BFS with the remaining node budget. Sound: definite verdicts are
/// never wrong.
ReachVerdict decide(const ReachQuery& q, const Budget& budget = {}, ReachStats* stats = nullptr);

/// Portfolio on a single pair instance.
ReachVerdict decide_pair(const PairInstance& p, const Budget& budget, ReachStats* stats = nullptr);

}  // namespace pnhs
