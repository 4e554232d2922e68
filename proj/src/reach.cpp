#include "pnhs/reach.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "pnhs/diophantine.hpp"

namespace pnhs {

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::exhausted_state_space: return "exhausted-state-space";
    case CertificateKind::state_equation_infeasible: return "state-equation-infeasible";
    case CertificateKind::not_coverable: return "not-coverable";
  }
  return "?";
}

std::string to_string(UnknownReason r) {
  switch (r) {
    case UnknownReason::budget_exhausted: return "budget-exhausted";
    case UnknownReason::backend_gap: return "backend-gap";
  }
  return "?";
}

ReachStats& ReachStats::operator+=(const ReachStats& o) {
  queries += o.queries;
  pair_instances += o.pair_instances;
  by_state_equation += o.by_state_equation;
  by_coverability += o.by_coverability;
  by_bfs_exhaustion += o.by_bfs_exhaustion;
  by_bfs_trace += o.by_bfs_trace;
  unknown += o.unknown;
  nodes += o.nodes;
  return *this;
}

std::size_t PairInstance::switch_action() const {
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i].role == AugmentedAction::Role::switch_to_target) return i;
  throw Error("pair instance has no switch action");
}

PairInstance reduce_to_pair(const PetriNet& net, const LinearSet& src, const LinearSet& tgt) {
  const std::size_t d = net.dim();
  if (src.dim() != d || tgt.dim() != d)
    throw DimensionMismatch("source/target dimension differs from net dimension");
  PairInstance p{PetriNet(d + 3), zeros(d + 3), zeros(d + 3), d, {}};
  const std::size_t c_src = d, c_run = d + 1, c_tgt = d + 2;
  auto lift = [&](const Vector& main, std::optional<std::size_t> control) {
    Vector v = concat(main, zeros(3));
    if (control) v[*control] = 1;
    return v;
  };
  using Role = AugmentedAction::Role;
  for (std::size_t j = 0; j < src.periods().size(); ++j) {
    p.net.add_action(lift(zeros(d), c_src), lift(src.periods()[j], c_src), "pump" + std::to_string(j));
    p.roles.push_back({Role::source_pump, j});
  }
  p.net.add_action(lift(zeros(d), c_src), lift(src.base(), c_run), "start");
  p.roles.push_back({Role::start, 0});
  for (std::size_t i = 0; i < net.size(); ++i) {
    const Action& a = net.action(i);
    p.net.add_action(lift(a.pre, c_run), lift(a.post, c_run), "run_" + a.name);
    p.roles.push_back({Role::original, i});
  }
  p.net.add_action(lift(tgt.base(), c_run), lift(zeros(d), c_tgt), "switch");
  p.roles.push_back({Role::switch_to_target, 0});
  for (std::size_t j = 0; j < tgt.periods().size(); ++j) {
    p.net.add_action(lift(tgt.periods()[j], c_tgt), lift(zeros(d), c_tgt), "drain" + std::to_string(j));
    p.roles.push_back({Role::target_drain, j});
  }
  p.initial[c_src] = 1;
  p.final[c_tgt] = 1;
  return p;
}

Trace project_trace(const PairInstance& p, const Trace& augmented) {
  const std::size_t d = p.original_dim;
  auto main_of = [d](const Configuration& c) { return Configuration(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(d)); };
  Trace out{zeros(d), {}, zeros(d)};
  Configuration cur = augmented.start;
  for (std::size_t s : augmented.steps) {
    const auto& role = p.roles.at(s);
    Configuration before = cur;
    cur = fire(p.net, cur, s);
    switch (role.role) {
      case AugmentedAction::Role::start: out.start = main_of(cur); break;
      case AugmentedAction::Role::original: out.steps.push_back(role.index); break;
      case AugmentedAction::Role::switch_to_target: out.end = main_of(before); break;
      default: break;
    }
  }
  return out;
}

namespace {

bool past(const std::optional<Deadline>& deadline) {
  return deadline && std::chrono::steady_clock::now() > *deadline;
}

}  // namespace

ReachVerdict bfs_backend(const PairInstance& p, std::size_t node_budget,
                         std::optional<Deadline> deadline, std::size_t* nodes_used) {
  struct Node {
    Configuration config;
    std::size_t parent;
    std::size_t action;
  };
  std::vector<Node> nodes{{p.initial, SIZE_MAX, SIZE_MAX}};
  std::unordered_map<Configuration, std::size_t, VectorHash> index{{p.initial, 0}};
  auto rebuild = [&](std::size_t n) {
    std::vector<std::size_t> steps;
    for (; nodes[n].parent != SIZE_MAX; n = nodes[n].parent) steps.push_back(nodes[n].action);
    std::reverse(steps.begin(), steps.end());
    Trace t = fire_sequence(p.net, p.initial, steps);
    return Reachable{t, project_trace(p, t), 0, 0};
  };
  auto report = [&] {
    if (nodes_used) *nodes_used = nodes.size();
  };
  if (p.initial == p.final) {
    report();
    return rebuild(0);
  }
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if ((head & 1023) == 0 && past(deadline)) {
      report();
      return Unknown{UnknownReason::budget_exhausted, "bfs: time cap reached"};
    }
    for (std::size_t i = 0; i < p.net.size(); ++i) {
      if (!leq(p.net.actions()[i].pre, nodes[head].config)) continue;
      Configuration next = fire(p.net, nodes[head].config, i);
      if (index.contains(next)) continue;
      if (nodes.size() >= node_budget) {
        report();
        return Unknown{UnknownReason::budget_exhausted, "bfs: node budget reached"};
      }
      bool hit = next == p.final;
      index.emplace(next, nodes.size());
      nodes.push_back({std::move(next), head, i});
      if (hit) {
        report();
        return rebuild(nodes.size() - 1);
      }
    }
  }
  report();
  return Unreachable{{CertificateKind::exhausted_state_space}};
}

namespace {

// initial + C·sigma = final over sigma in N^|actions|, with sigma(a) = 0
// for every action outside `live`.
ReachVerdict marking_equation(const PairInstance& p, std::size_t equation_budget, const std::vector<bool>& live) {
  const std::size_t places = p.net.dim();
  const std::size_t actions = p.net.size();
  ConstraintSystem sys(actions);
  for (std::size_t q = 0; q < places; ++q) {
    Vector row(actions, 0);
    for (std::size_t a = 0; a < actions; ++a)
      if (live[a]) row[a] = checked_sub(p.net.action(a).post[q], p.net.action(a).pre[q]);
    sys.equal(std::move(row), checked_sub(p.final[q], p.initial[q]));
  }
  for (std::size_t a = 0; a < actions; ++a)
    if (!live[a]) sys.at_most(unit(actions, a), 0);
  if (!rational_feasible(sys)) return Unreachable{{CertificateKind::state_equation_infeasible}};
  std::optional<bool> feasible = integer_feasible(sys, equation_budget);
  if (feasible && !*feasible) return Unreachable{{CertificateKind::state_equation_infeasible}};
  return Unknown{feasible ? UnknownReason::backend_gap : UnknownReason::budget_exhausted,
                 "state equation feasible"};
}

}  // namespace

ReachVerdict state_equation_backend(const PairInstance& p, std::size_t equation_budget) {
  return marking_equation(p, equation_budget, std::vector<bool>(p.net.size(), true));
}

bool KarpMiller::covers(const Vector& target) const {
  for (const auto& l : labels) {
    bool ok = true;
    for (std::size_t i = 0; i < target.size() && ok; ++i) ok = l[i] >= target[i];
    if (ok) return true;
  }
  return false;
}

KarpMiller karp_miller(const PetriNet& net, const Configuration& start, std::size_t node_budget,
                       std::optional<Deadline> deadline) {
  constexpr value_t w = KarpMiller::omega_value;
  struct Node {
    Vector label;
    std::size_t parent;
  };
  std::vector<Node> nodes{{start, SIZE_MAX}};
  std::unordered_set<Vector, VectorHash> seen{start};
  KarpMiller km;
  km.bounded = true;
  bool timed_out = false;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if ((head & 255) == 0 && past(deadline)) {
      timed_out = true;
      break;
    }
    const Vector cur = nodes[head].label;
    for (std::size_t i = 0; i < net.size(); ++i) {
      const Action& a = net.action(i);
      bool ok = true;
      for (std::size_t q = 0; q < cur.size() && ok; ++q) ok = cur[q] >= a.pre[q];
      if (!ok) continue;
      Vector next(cur.size());
      for (std::size_t q = 0; q < cur.size(); ++q)
        next[q] = cur[q] == w ? w : checked_add(cur[q] - a.pre[q], a.post[q]);
      // Accelerate against every ancestor strictly below.
      for (std::size_t anc = head; anc != SIZE_MAX; anc = nodes[anc].parent) {
        const Vector& al = nodes[anc].label;
        bool below = true, strict = false;
        for (std::size_t q = 0; q < next.size() && below; ++q) {
          below = al[q] <= next[q];
          strict = strict || al[q] < next[q];
        }
        if (!below || !strict) continue;
        for (std::size_t q = 0; q < next.size(); ++q)
          if (al[q] < next[q] && next[q] != w) {
            next[q] = w;
            km.bounded = false;
          }
      }
      if (seen.contains(next)) continue;
      if (nodes.size() >= node_budget) {
        km.complete = false;
        for (const auto& n : nodes) km.labels.push_back(n.label);
        return km;
      }
      seen.insert(next);
      nodes.push_back({std::move(next), head});
    }
  }
  km.complete = !timed_out;
  for (const auto& n : nodes) km.labels.push_back(n.label);
  return km;
}

CoverabilityVerdict coverability_backend(const PairInstance& p, std::size_t node_budget,
                                         std::optional<Deadline> deadline) {
  KarpMiller km = karp_miller(p.net, p.initial, node_budget, deadline);
  CoverabilityVerdict out{Unknown{UnknownReason::backend_gap, "switch precondition coverable"},
                          km.complete, km.complete && km.bounded, km.labels.size(), {}};
  const Vector& need = p.net.action(p.switch_action()).pre;
  if (!km.complete) {
    out.verdict = Unknown{UnknownReason::budget_exhausted, "coverability: budget reached"};
  } else if (!km.covers(need)) {
    out.verdict = Unreachable{{CertificateKind::not_coverable}};
  }
  out.tree = std::move(km);
  return out;
}

ReachVerdict decide_pair(const PairInstance& p, const Budget& budget, ReachStats* stats) {
  ReachStats local;
  ReachStats& st = stats ? *stats : local;
  ++st.pair_instances;
  const Deadline deadline = std::chrono::steady_clock::now() + budget.time_cap;

  ReachVerdict v = state_equation_backend(p, budget.equation_budget);
  if (is_unreachable(v)) {
    ++st.by_state_equation;
    return v;
  }
  const std::size_t km_budget = std::max<std::size_t>(1, budget.node_budget / 4);
  CoverabilityVerdict cov = coverability_backend(p, km_budget, deadline);
  st.nodes += cov.nodes;
  if (is_unreachable(cov.verdict)) {
    ++st.by_coverability;
    return cov.verdict;
  }
  if (cov.complete) {
    // An action whose precondition is not coverable never fires; the
    // marking equation without it is a sharper necessary condition.
    std::vector<bool> live(p.net.size());
    bool pruned = false;
    for (std::size_t a = 0; a < p.net.size(); ++a) {
      live[a] = cov.tree.covers(p.net.action(a).pre);
      pruned = pruned || !live[a];
    }
    if (pruned) {
      v = marking_equation(p, budget.equation_budget, live);
      if (is_unreachable(v)) {
        ++st.by_state_equation;
        return v;
      }
    }
  }
  const std::size_t remaining =
      budget.node_budget > cov.nodes ? budget.node_budget - cov.nodes : std::size_t{1};
  std::size_t used = 0;
  v = bfs_backend(p, std::max<std::size_t>(remaining, 1), deadline, &used);
  st.nodes += used;
  if (is_reachable(v))
    ++st.by_bfs_trace;
  else if (is_unreachable(v))
    ++st.by_bfs_exhaustion;
  else
    ++st.unknown;
  return v;
}

ReachVerdict decide(const ReachQuery& q, const Budget& budget, ReachStats* stats) {
  if (q.source.dim() != q.net.dim() || q.target.dim() != q.net.dim())
    throw DimensionMismatch("query sets do not match the net dimension");
  ReachStats local;
  ReachStats& st = stats ? *stats : local;
  ++st.queries;
  Unreachable all;
  std::optional<Unknown> unknown;
  for (std::size_t i = 0; i < q.source.size(); ++i)
    for (std::size_t j = 0; j < q.target.size(); ++j) {
      PairInstance p = reduce_to_pair(q.net, q.source.components()[i], q.target.components()[j]);
      ReachVerdict v = decide_pair(p, budget, &st);
      if (auto* r = std::get_if<Reachable>(&v)) {
        r->source_component = i;
        r->target_component = j;
        return v;
      }
      if (auto* u = std::get_if<Unreachable>(&v)) {
        all.certificates.push_back(u->certificates.front());
      } else if (!unknown) {
        unknown = std::get<Unknown>(v);
        unknown->detail += " (source component " + std::to_string(i) + ", target component " +
                           std::to_string(j) + ")";
      }
    }
  if (unknown) return *unknown;
  return all;
}

}  // namespace pnhs
