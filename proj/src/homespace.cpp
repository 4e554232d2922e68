#include "pnhs/homespace.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace pnhs {

std::string verdict_name(const HomeSpaceVerdict& v) {
  if (std::holds_alternative<HomeSpace>(v)) return "home-space";
  if (std::holds_alternative<NotHomeSpace>(v)) return "not-home-space";
  return "unknown";
}

FreezeNet build_freeze_net(const PetriNet& net, const SemilinearSet& from,
                           const std::vector<SemilinearSet>& witnesses) {
  const std::size_t d = net.dim();
  const std::size_t m = witnesses.size();
  if (m == 0) throw Error("freeze net needs at least one witness");
  if (from.dim() != d) throw DimensionMismatch("source set dimension differs from net dimension");
  for (const auto& w : witnesses)
    if (w.dim() != d) throw DimensionMismatch("witness dimension differs from net dimension");

  FreezeNet f{ReachQuery{PetriNet(1), SemilinearSet(1), SemilinearSet(1)}, d, m, {}, {}, {}, {}, {}};
  std::size_t places = (m + 1) * d + (m + 1) + 1;
  for (std::size_t c = 0; c < from.size(); ++c) f.source_selected.push_back(places++);
  for (std::size_t i = 0; i < m; ++i) {
    f.pending.push_back(places++);
    f.selected.emplace_back();
    for (std::size_t c = 0; c < witnesses[i].size(); ++c) f.selected.back().push_back(places++);
    f.done.push_back(places++);
  }

  PetriNet out(places);
  auto blank = [&] { return zeros(places); };
  // Copies `v` onto the listed banks of `target`.
  auto on_banks = [&](Vector& target, const Vector& v, const std::vector<std::size_t>& banks) {
    for (std::size_t b : banks)
      for (std::size_t p = 0; p < d; ++p) target[f.bank(b, p)] = checked_add(target[f.bank(b, p)], v[p]);
  };
  std::vector<std::size_t> all_banks(m + 1);
  for (std::size_t b = 0; b <= m; ++b) all_banks[b] = b;
  using K = FreezeNet::Kind;

  for (std::size_t c = 0; c < from.size(); ++c) {
    const LinearSet& l = from.components()[c];
    Vector pre = blank(), post = blank();
    pre[f.source_control()] = 1;
    post[f.source_selected[c]] = 1;
    on_banks(post, l.base(), all_banks);
    out.add_action(pre, post, "x" + std::to_string(c) + "_select");
    f.roles.push_back({K::select_source, c});
    for (std::size_t j = 0; j < l.periods().size(); ++j) {
      Vector pp = blank(), qq = blank();
      pp[f.source_selected[c]] = 1;
      qq[f.source_selected[c]] = 1;
      on_banks(qq, l.periods()[j], all_banks);
      out.add_action(pp, qq, "x" + std::to_string(c) + "_pump" + std::to_string(j));
      f.roles.push_back({K::pump_source, c, 0, j});
    }
    Vector ep = blank(), eq = blank();
    ep[f.source_selected[c]] = 1;
    eq[f.stage_place(0)] = 1;
    out.add_action(ep, eq, "x" + std::to_string(c) + "_enter");
    f.roles.push_back({K::enter_stage0, c});
  }

  for (std::size_t j = 0; j < m; ++j) {
    std::vector<std::size_t> live{0};
    for (std::size_t b = j + 1; b <= m; ++b) live.push_back(b);
    for (std::size_t a = 0; a < net.size(); ++a) {
      Vector pre = blank(), post = blank();
      pre[f.stage_place(j)] = 1;
      post[f.stage_place(j)] = 1;
      on_banks(pre, net.action(a).pre, live);
      on_banks(post, net.action(a).post, live);
      out.add_action(pre, post, "s" + std::to_string(j) + "_" + net.action(a).name);
      f.roles.push_back({K::stage_action, j, a});
    }
  }

  for (std::size_t i = 1; i <= m; ++i) {
    Vector pre = blank(), post = blank();
    pre[f.stage_place(i - 1)] = 1;
    post[f.stage_place(i)] = 1;
    post[f.pending[i - 1]] = 1;
    out.add_action(pre, post, "checkpoint" + std::to_string(i));
    f.roles.push_back({K::checkpoint, i});
  }

  for (std::size_t i = 1; i <= m; ++i) {
    const SemilinearSet& w = witnesses[i - 1];
    for (std::size_t c = 0; c < w.size(); ++c) {
      const LinearSet& l = w.components()[c];
      const std::size_t sel = f.selected[i - 1][c];
      const std::string tag = "w" + std::to_string(i) + "c" + std::to_string(c);
      Vector pre = blank(), post = blank();
      pre[f.pending[i - 1]] = 1;
      on_banks(pre, l.base(), {i});
      post[sel] = 1;
      out.add_action(pre, post, tag + "_base");
      f.roles.push_back({K::subtract_base, i, c});
      for (std::size_t j = 0; j < l.periods().size(); ++j) {
        Vector pp = blank(), qq = blank();
        pp[sel] = 1;
        on_banks(pp, l.periods()[j], {i});
        qq[sel] = 1;
        out.add_action(pp, qq, tag + "_period" + std::to_string(j));
        f.roles.push_back({K::subtract_period, i, c, j});
      }
      Vector fp = blank(), fq = blank();
      fp[sel] = 1;
      fq[f.done[i - 1]] = 1;
      out.add_action(fp, fq, tag + "_finish");
      f.roles.push_back({K::finish, i, c});
    }
  }

  Vector start = blank();
  start[f.source_control()] = 1;
  Vector goal = blank();
  goal[f.stage_place(m)] = 1;
  for (std::size_t done : f.done) goal[done] = 1;
  std::vector<Vector> free_main;
  for (std::size_t p = 0; p < d; ++p) free_main.push_back(unit(places, f.bank(0, p)));
  f.query = ReachQuery{std::move(out), SemilinearSet::finite(places, {start}),
                       SemilinearSet::of(LinearSet(goal, free_main))};
  return f;
}

NotHomeSpace decode_chain(const FreezeNet& f, const PetriNet& net, const Reachable& r) {
  auto bank0 = [&](const Configuration& c) {
    return Configuration(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(f.dim));
  };
  NotHomeSpace out;
  Configuration cur = r.original.start;
  std::vector<std::size_t> steps;
  for (std::size_t s : r.original.steps) {
    cur = fire(f.query.net, cur, s);
    const auto& role = f.roles.at(s);
    switch (role.kind) {
      case FreezeNet::Kind::enter_stage0: out.chain.push_back(bank0(cur)); break;
      case FreezeNet::Kind::stage_action: steps.push_back(role.b); break;
      case FreezeNet::Kind::checkpoint:
        out.chain.push_back(bank0(cur));
        out.checkpoints.push_back(steps.size());
        break;
      default: break;
    }
  }
  if (out.chain.empty()) throw Error("freeze trace never entered stage 0");
  out.run = fire_sequence(net, out.chain.front(), steps);
  return out;
}

CheckReport check_components(const PetriNet& net, const SemilinearSet& from,
                             const std::vector<LinearSet>& home, const WitnessOptions& options) {
  const std::size_t d = net.dim();
  if (from.dim() != d) throw DimensionMismatch("X dimension differs from net dimension");
  for (const auto& h : home)
    if (h.dim() != d) throw DimensionMismatch("H dimension differs from net dimension");
  CheckReport report{HomeSpace{}, {}, {}, {}};
  if (from.empty()) return report;
  if (home.empty()) {
    Configuration x = from.components().front().base();
    report.verdict = NotHomeSpace{{x}, Trace{x, {}, x}, {}};
    return report;
  }

  std::map<LinearSet, std::size_t> cache;
  std::vector<SemilinearSet> ws;
  for (std::size_t i = 0; i < home.size(); ++i) {
    if (auto it = cache.find(home[i]); it != cache.end()) {
      report.witnesses.push_back(report.witnesses[it->second]);
      ws.push_back(report.witnesses.back().witness);
      continue;
    }
    if (options.progress) options.progress("witness for H component " + std::to_string(i) + ": " + to_string(home[i]));
    WitnessResult w = witness_linear(net, home[i], options);
    report.counters += w.counters;
    if (!w.conclusive()) {
      report.verdict = UndecidedHomeSpace{"witness construction for component " + std::to_string(i) +
                                              " was inconclusive",
                                          w.blocker};
      report.witnesses.push_back(std::move(w));
      return report;
    }
    cache.emplace(home[i], report.witnesses.size());
    ws.push_back(w.witness);
    report.witnesses.push_back(std::move(w));
  }

  FreezeNet f = build_freeze_net(net, from, ws);
  if (options.progress)
    options.progress("freeze net: " + std::to_string(f.query.net.dim()) + " places, " +
                     std::to_string(f.query.net.size()) + " actions");
  ReachVerdict v = decide(f.query, options.budget, &report.final_query);
  report.counters.reach_stats += report.final_query;
  if (auto* r = std::get_if<Reachable>(&v)) {
    report.verdict = decode_chain(f, net, *r);
  } else if (is_unreachable(v)) {
    report.verdict = HomeSpace{};
  } else {
    report.verdict = UndecidedHomeSpace{"final reachability query: " + std::get<Unknown>(v).detail, std::nullopt};
  }
  return report;
}

CheckReport check(const HomeSpaceQuery& q, const WitnessOptions& options) {
  WitnessOptions o = options;
  o.budget = q.budget;
  return check_components(q.net, q.from, q.home.components(), o);
}

BruteForceVerdict brute_force_check(const PetriNet& net, const std::vector<Configuration>& from,
                                    const SemilinearSet& home, std::size_t node_budget) {
  // Explore post(X) once, then propagate "can reach H" backwards over it.
  std::vector<Configuration> states;
  std::unordered_map<Configuration, std::size_t, VectorHash> index;
  for (const auto& x : from) {
    BoundedReach r = reachable_set_bounded(net, x, node_budget);
    if (!r.complete) return {};
    for (auto& c : r.configurations)
      if (index.emplace(c, states.size()).second) states.push_back(c);
  }
  std::sort(states.begin(), states.end());
  index.clear();
  for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i], i);

  std::vector<std::vector<std::size_t>> preds(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t a : enabled_actions(net, states[i])) preds[index.at(fire(net, states[i], a))].push_back(i);
  std::vector<bool> good(states.size(), false);
  std::vector<std::size_t> work;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (member(home, states[i])) {
      good[i] = true;
      work.push_back(i);
    }
  while (!work.empty()) {
    std::size_t i = work.back();
    work.pop_back();
    for (std::size_t p : preds[i])
      if (!good[p]) {
        good[p] = true;
        work.push_back(p);
      }
  }
  for (std::size_t i = 0; i < states.size(); ++i)
    if (!good[i]) return {BruteForceVerdict::Kind::not_home_space, states[i]};
  return {BruteForceVerdict::Kind::home_space, std::nullopt};
}

}  // namespace pnhs
