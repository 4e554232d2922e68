#include "pnhs/witness.hpp"

#include <algorithm>

namespace pnhs {

Vector prmark(const Vector& y, const Vector& u, const std::vector<Vector>& periods) {
  if (u.size() != periods.size()) throw DimensionMismatch("coefficient count differs from period count");
  Vector r = y;
  for (std::size_t j = 0; j < periods.size(); ++j) r = add(r, scale(periods[j], u[j]));
  return r;
}

OracleCounters& OracleCounters::operator+=(const OracleCounters& o) {
  dc += o.dc;
  dcb += o.dcb;
  dcb_shortcut += o.dcb_shortcut;
  uy += o.uy;
  reach += o.reach;
  cache_hits += o.cache_hits;
  reach_stats += o.reach_stats;
  return *this;
}

std::vector<Vector> vectors_up_to_norm(std::size_t n, value_t max_norm) {
  std::vector<Vector> out;
  Vector cur(n, 0);
  auto rec = [&](auto&& self, std::size_t i, value_t left) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (value_t v = 0; v <= left; ++v) {
      cur[i] = v;
      self(self, i + 1, left - v);
    }
    cur[i] = 0;
  };
  if (max_norm >= 0) rec(rec, 0, max_norm);
  return out;
}

namespace {

// The net with one extra place (last index) that no action touches; it
// carries the token budget in the decrease gadgets.
PetriNet with_budget_place(const PetriNet& net) {
  PetriNet out(net.dim() + 1);
  for (const auto& a : net.actions()) out.add_action(concat(a.pre, {0}), concat(a.post, {0}), a.name);
  return out;
}

Answer to_answer(const ReachVerdict& v) {
  if (is_reachable(v)) return Answer::yes;
  if (is_unreachable(v)) return Answer::no;
  return Answer::unknown;
}

// { (y', B) : B >= ‖y'‖ + 1 } plus optional extra periods that leave B alone.
LinearSet decreased_target(std::size_t d, const std::vector<Vector>& extra) {
  std::vector<Vector> periods{unit(d + 1, d)};
  for (std::size_t i = 0; i < d; ++i) {
    Vector p = unit(d + 1, i);
    p[d] = 1;
    periods.push_back(std::move(p));
  }
  for (const auto& e : extra) periods.push_back(concat(e, {0}));
  return LinearSet(unit(d + 1, d), std::move(periods));
}

ReachVerdict run(const ReachQuery& q, const Budget& budget, OracleCounters* counters) {
  return decide(q, budget, counters ? &counters->reach_stats : nullptr);
}

}  // namespace

ReachQuery dc_query(const PetriNet& net, const PartialVector& x) {
  const std::size_t d = net.dim();
  if (x.size() != d) throw DimensionMismatch("partial configuration has wrong length");
  Vector fixed = x.fixed_part();
  std::vector<Vector> pumps;
  for (std::size_t i : x.omega_coords()) {
    Vector p = unit(d + 1, i);
    p[d] = 1;
    pumps.push_back(std::move(p));
  }
  LinearSet source(concat(fixed, {norm(fixed)}), std::move(pumps));
  return ReachQuery{with_budget_place(net), SemilinearSet::of(std::move(source)),
                    SemilinearSet::of(decreased_target(d, {}))};
}

ReachQuery dcb_query(const PetriNet& net, const std::vector<Vector>& periods, const PartialVector& pair) {
  const std::size_t d = net.dim();
  const std::size_t k = periods.size();
  if (pair.size() != d + k) throw DimensionMismatch("presentation pair has wrong length");
  Vector y_fixed(d, 0);
  std::vector<Vector> pumps;
  for (std::size_t i = 0; i < d; ++i) {
    if (pair[i]) {
      y_fixed[i] = *pair[i];
    } else {
      Vector p = unit(d + 1, i);
      p[d] = 1;
      pumps.push_back(std::move(p));
    }
  }
  Vector start = y_fixed;
  for (std::size_t j = 0; j < k; ++j) {
    if (pair[d + j])
      start = add(start, scale(periods[j], *pair[d + j]));
    else
      pumps.push_back(concat(periods[j], {0}));
  }
  LinearSet source(concat(start, {norm(y_fixed)}), std::move(pumps));
  return ReachQuery{with_budget_place(net), SemilinearSet::of(std::move(source)),
                    SemilinearSet::of(decreased_target(d, periods))};
}

Answer dc_oracle(const PetriNet& net, const PartialVector& x, const Budget& budget,
                 OracleCounters* counters) {
  if (counters) ++counters->dc;
  return to_answer(run(dc_query(net, x), budget, counters));
}

Answer dcb_oracle(const PetriNet& net, const std::vector<Vector>& periods, const PartialVector& pair,
                  const Budget& budget, OracleCounters* counters) {
  const std::size_t d = net.dim();
  if (counters) ++counters->dcb;
  for (const auto& p : periods)
    if (is_zero(p)) throw Error("zero period passed to the DCB oracle");
  // y >= p_i presents the same configuration with a smaller basis.
  for (const auto& p : periods) {
    bool fits = true;
    for (std::size_t i = 0; i < d && fits; ++i) fits = !pair[i] || *pair[i] >= p[i];
    if (fits) {
      if (counters) ++counters->dcb_shortcut;
      return Answer::yes;
    }
  }
  return to_answer(run(dcb_query(net, periods, pair), budget, counters));
}

Answer uy_oracle(const PetriNet& net, const LinearSet& target, const Vector& y, const PartialVector& u,
                 const Budget& budget, OracleCounters* counters) {
  const auto& periods = target.periods();
  if (u.size() != periods.size()) throw DimensionMismatch("coefficient vector has wrong length");
  if (counters) ++counters->uy;
  Vector start = y;
  std::vector<Vector> pumps;
  for (std::size_t j = 0; j < periods.size(); ++j) {
    if (u[j])
      start = add(start, scale(periods[j], *u[j]));
    else
      pumps.push_back(periods[j]);
  }
  ReachQuery q{net, SemilinearSet::of(LinearSet(start, std::move(pumps))), SemilinearSet::of(target)};
  return to_answer(run(q, budget, counters));
}

namespace {

void say(const WitnessOptions& o, const std::string& msg) {
  if (o.progress) o.progress(msg);
}

std::optional<MinBasis> run_vj(std::size_t dim, const std::function<Answer(const PartialVector&)>& query,
                               const std::string& oracle_name, const std::string& context,
                               WitnessResult& result) {
  VjStats st;
  VjOutcome out = min_basis(UpwardOracle{dim, query}, &st);
  result.counters.cache_hits += st.cache_hits;
  if (auto* inc = std::get_if<Inconclusive>(&out)) {
    result.blocker = WitnessBlocker{oracle_name, inc->query, context};
    return std::nullopt;
  }
  return std::get<MinBasis>(out);
}

// Rows of (y, u) |-> y + P·u.
std::vector<Vector> prmark_matrix(std::size_t d, const std::vector<Vector>& periods) {
  const std::size_t k = periods.size();
  std::vector<Vector> rows(d, Vector(d + k, 0));
  for (std::size_t i = 0; i < d; ++i) {
    rows[i][i] = 1;
    for (std::size_t j = 0; j < k; ++j) rows[i][d + j] = periods[j][i];
  }
  return rows;
}

SemilinearSet norm_above(std::size_t n, std::size_t counted, value_t bound) {
  Vector coeffs(n, 0);
  std::fill(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(counted), 1);
  ConstraintSystem sys(n);
  sys.at_least(std::move(coeffs), checked_add(bound, 1));
  return constraints_to_semilinear(sys);
}

}  // namespace

WitnessResult witness_singleton(const PetriNet& net, const Vector& b, const WitnessOptions& options) {
  const std::size_t d = net.dim();
  if (b.size() != d) throw DimensionMismatch("basis vector has wrong length");
  WitnessResult result;
  result.witness = SemilinearSet(d);
  const Budget& budget = options.budget;

  say(options, "computing MIN(DC)");
  auto dc = run_vj(
      d, [&](const PartialVector& x) { return dc_oracle(net, x, budget, &result.counters); }, "dc",
      "MIN(DC)", result);
  if (!dc) return result;
  result.decrease_basis = *dc;
  SemilinearSet ndc = complement_upward(*dc);

  const value_t nb = norm(b);
  std::vector<Vector> kept;
  const SemilinearSet target = SemilinearSet::finite(d, {b});
  for (const auto& x : vectors_up_to_norm(d, nb)) {
    if (dc->covers(x)) continue;  // not in NDC
    ++result.counters.reach;
    ReachVerdict v = run(ReachQuery{net, SemilinearSet::finite(d, {x}), target}, budget, &result.counters);
    if (is_unknown(v)) {
      result.blocker = WitnessBlocker{"reach", PartialVector::concrete(x), "x ->* " + to_string(b)};
      return result;
    }
    if (is_unreachable(v)) kept.push_back(x);
  }
  SemilinearSet large = intersect(ndc, norm_above(d, d, nb));
  SemilinearSet small = intersect(ndc, SemilinearSet::finite(d, kept));
  result.pieces = {large, small};
  result.witness = unite(large, small);
  return result;
}

WitnessResult witness_linear(const PetriNet& net, const LinearSet& target, const WitnessOptions& options) {
  const std::size_t d = net.dim();
  if (target.dim() != d) throw DimensionMismatch("linear set dimension differs from net dimension");
  const std::vector<Vector>& periods = target.periods();
  const std::size_t k = periods.size();
  const std::size_t n = d + k;
  const Vector& b = target.base();
  const value_t nb = norm(b);
  const Budget& budget = options.budget;

  WitnessResult result;
  result.witness = SemilinearSet(d);

  say(options, "computing MIN(DCB) over N^" + std::to_string(n));
  auto dcb = run_vj(
      n,
      [&](const PartialVector& pair) { return dcb_oracle(net, periods, pair, budget, &result.counters); },
      "dcb", "MIN(DCB)", result);
  if (!dcb) return result;
  result.decrease_basis = *dcb;
  const SemilinearSet pairs_outside = complement_upward(*dcb);

  std::vector<SemilinearSet> pieces;
  pieces.push_back(intersect(pairs_outside, norm_above(n, d, nb)));

  std::vector<Vector> to_u(k, Vector(n, 0));
  for (std::size_t j = 0; j < k; ++j) to_u[j][d + j] = 1;
  std::vector<Vector> from_u(n, Vector(k, 0));
  for (std::size_t j = 0; j < k; ++j) from_u[d + j][j] = 1;
  std::vector<Vector> u_units;
  for (std::size_t j = 0; j < k; ++j) u_units.push_back(unit(n, d + j));

  const auto small_bases = vectors_up_to_norm(d, nb);
  say(options, std::to_string(small_bases.size()) + " presentation bases with norm <= " + std::to_string(nb));
  for (const auto& y : small_bases) {
    SemilinearSet fiber = SemilinearSet::of(LinearSet(concat(y, zeros(k)), u_units));
    SemilinearSet slice_pairs = intersect(pairs_outside, fiber);
    if (slice_pairs.empty()) continue;  // every (y, u) is in DCB
    SemilinearSet slice = image_affine(slice_pairs, to_u, zeros(k));

    auto uy = run_vj(
        k,
        [&](const PartialVector& u) { return uy_oracle(net, target, y, u, budget, &result.counters); },
        "uy", "MIN(U_y) for y=" + to_string(y), result);
    if (!uy) return result;
    result.uy_tables.push_back({y, *uy});
    SemilinearSet stuck = intersect(slice, complement_upward(*uy));
    if (stuck.empty()) continue;
    pieces.push_back(image_affine(stuck, from_u, concat(y, zeros(k))));
  }

  SemilinearSet all_pairs(n);
  for (const auto& p : pieces) all_pairs = unite(all_pairs, p);
  result.pieces = std::move(pieces);
  result.witness = image_affine(all_pairs, prmark_matrix(d, periods), zeros(d));
  return result;
}

NdcbResult ndcbconf(const PetriNet& net, const LinearSet& target, const WitnessOptions& options) {
  const std::size_t d = net.dim();
  const auto& periods = target.periods();
  WitnessResult scratch;
  auto dcb = run_vj(
      d + periods.size(),
      [&](const PartialVector& pair) {
        return dcb_oracle(net, periods, pair, options.budget, &scratch.counters);
      },
      "dcb", "MIN(DCB)", scratch);
  NdcbResult out{std::nullopt, dcb.value_or(MinBasis{}), scratch.counters, scratch.blocker};
  if (dcb) out.set = image_affine(complement_upward(*dcb), prmark_matrix(d, periods), zeros(d));
  return out;
}

}  // namespace pnhs
