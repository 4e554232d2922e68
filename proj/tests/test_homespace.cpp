#include <doctest.h>

#include <algorithm>
#include <random>

#include "pnhs/homespace.hpp"
#include "support.hpp"

using namespace pnhs;
using testing::box;
using testing::mover;
using testing::naive_member;

namespace {

SemilinearSet point(const Vector& v) { return SemilinearSet::finite(v.size(), {v}); }

/// Replays a chain and checks each snapshot against its witness.
void check_chain(const PetriNet& net, const SemilinearSet& from, const NotHomeSpace& n,
                 const std::vector<SemilinearSet>& ws) {
  REQUIRE(n.chain.size() == ws.size() + 1);
  CHECK(member(from, n.chain.front()));
  Trace t = fire_sequence(net, n.run.start, n.run.steps);
  CHECK(t.end == n.run.end);
  REQUIRE(n.checkpoints.size() == ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    std::vector<std::size_t> prefix(n.run.steps.begin(),
                                    n.run.steps.begin() + static_cast<std::ptrdiff_t>(n.checkpoints[i]));
    CHECK(fire_sequence(net, n.run.start, prefix).end == n.chain[i + 1]);
    CHECK(member(ws[i], n.chain[i + 1]));
  }
}

}  // namespace

TEST_CASE("check examples") {
  auto hs = check(HomeSpaceQuery{mover(), point({1, 0}), point({0, 1}), {}});
  CHECK(std::holds_alternative<HomeSpace>(hs.verdict));

  auto nhs = check(HomeSpaceQuery{mover(), point({1, 0}), point({0, 0}), {}});
  REQUIRE(std::holds_alternative<NotHomeSpace>(nhs.verdict));
  const auto& n = std::get<NotHomeSpace>(nhs.verdict);
  check_chain(mover(), point({1, 0}), n, {nhs.witnesses.front().witness});
  CHECK((n.chain.back() == Vector{1, 0} || n.chain.back() == Vector{0, 1}));

  SemilinearSet h(2, {LinearSet({0, 0}, {{1, 0}}), LinearSet({0, 1}, {{0, 1}})});
  auto empty_net = check(HomeSpaceQuery{PetriNet(2), SemilinearSet::finite(2, {{3, 0}, {0, 2}}), h, {}});
  CHECK(std::holds_alternative<HomeSpace>(empty_net.verdict));
}

TEST_CASE("check edge cases") {
  CHECK(std::holds_alternative<HomeSpace>(check(HomeSpaceQuery{mover(), SemilinearSet(2), point({0, 0}), {}}).verdict));
  auto r = check(HomeSpaceQuery{mover(), point({1, 0}), SemilinearSet(2), {}});
  REQUIRE(std::holds_alternative<NotHomeSpace>(r.verdict));
  CHECK(std::get<NotHomeSpace>(r.verdict).chain.front() == Vector{1, 0});
  CHECK_THROWS_AS(check(HomeSpaceQuery{mover(), point({1, 0, 0}), point({0, 1}), {}}), DimensionMismatch);
}

TEST_CASE("brute_force_check") {
  auto a = brute_force_check(mover(), {{1, 0}}, point({0, 1}), 1000);
  CHECK(a.kind == BruteForceVerdict::Kind::home_space);
  auto b = brute_force_check(mover(), {{1, 0}}, point({0, 0}), 1000);
  CHECK(b.kind == BruteForceVerdict::Kind::not_home_space);
  CHECK(b.counterexample == Vector{0, 1});
  auto c = brute_force_check(testing::producer(), {{0, 0}}, point({0, 0}), 1000);
  CHECK(c.kind == BruteForceVerdict::Kind::inconclusive);
}

TEST_CASE("freeze net structure") {
  WitnessResult w = witness_linear(mover(), LinearSet({0, 1}));
  REQUIRE(w.conclusive());
  SemilinearSet x = point({1, 0});
  FreezeNet f = build_freeze_net(mover(), x, {w.witness});
  std::size_t d = 2, m = 1;
  std::size_t gadget_places = 2 + w.witness.size() + x.size() + 1;
  CHECK(f.query.net.dim() == (m + 1) * d + (m + 1) + gadget_places);
  std::size_t stage_actions = 0;
  for (const auto& r : f.roles) stage_actions += r.kind == FreezeNet::Kind::stage_action;
  CHECK(stage_actions == mover().size() * m);
  CHECK(is_unreachable(decide(f.query)));

  FreezeNet f2 = build_freeze_net(mover(), x, {w.witness, w.witness});
  stage_actions = 0;
  for (const auto& r : f2.roles) stage_actions += r.kind == FreezeNet::Kind::stage_action;
  CHECK(stage_actions == mover().size() * 2);
  CHECK_THROWS_AS(build_freeze_net(mover(), x, {}), Error);
}

TEST_CASE("single-stage freeze net matches direct reachability") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 40; ++round) {
    PetriNet net = testing::random_net(rng, 2, 2, 1);
    SemilinearSet x = SemilinearSet::finite(2, {testing::random_vector(rng, 2, 2)});
    SemilinearSet w = testing::random_semilinear(rng, 2, 2, 1, 2);
    if (w.empty()) continue;
    FreezeNet f = build_freeze_net(net, x, {w});
    auto frozen = decide(f.query);
    auto direct = decide(ReachQuery{net, x, w});
    if (!is_unknown(frozen) && !is_unknown(direct)) CHECK(is_reachable(frozen) == is_reachable(direct));
    if (auto* r = std::get_if<Reachable>(&frozen)) check_chain(net, x, decode_chain(f, net, *r), {w});
  }
}

TEST_CASE("check agrees with brute force on random bounded instances") {
  std::mt19937_64 rng(62);
  int compared = 0;
  for (int round = 0; round < 40; ++round) {
    PetriNet net = testing::random_net(rng, 2, 2, 1);
    std::vector<Vector> xs{testing::random_vector(rng, 2, 2)};
    SemilinearSet h = testing::random_semilinear(rng, 2, 2, 1, 2);
    auto truth = brute_force_check(net, xs, h, 5000);
    if (truth.kind == BruteForceVerdict::Kind::inconclusive) continue;
    auto r = check(HomeSpaceQuery{net, SemilinearSet::finite(2, xs), h, {}});
    if (std::holds_alternative<UndecidedHomeSpace>(r.verdict)) continue;
    ++compared;
    CHECK(std::holds_alternative<HomeSpace>(r.verdict) == (truth.kind == BruteForceVerdict::Kind::home_space));
    if (auto* n = std::get_if<NotHomeSpace>(&r.verdict)) {
      std::vector<SemilinearSet> ws;
      for (const auto& w : r.witnesses) ws.push_back(w.witness);
      check_chain(net, SemilinearSet::finite(2, xs), *n, ws);
      auto back = testing::can_reach(net, n->chain.back(), [&](const Configuration& c) { return naive_member(h, c); });
      if (back) CHECK_FALSE(*back);
    }
  }
  CHECK(compared >= 20);
}

TEST_CASE("verdict is invariant under permutation of H") {
  std::mt19937_64 rng(63);
  for (int round = 0; round < 10; ++round) {
    PetriNet net = testing::random_net(rng, 2, 2, 1);
    SemilinearSet x = SemilinearSet::finite(2, {testing::random_vector(rng, 2, 2)});
    std::vector<LinearSet> comps;
    for (int i = 0; i < 3; ++i) comps.push_back(testing::random_linear(rng, 2, 1, 2));
    std::sort(comps.begin(), comps.end());
    std::string first;
    do {
      std::string v = verdict_name(check_components(net, x, comps).verdict);
      if (first.empty()) first = v;
      CHECK(v == first);
    } while (std::next_permutation(comps.begin(), comps.end()));
  }
}

TEST_CASE("adding a component to H never loses the home-space property") {
  std::mt19937_64 rng(64);
  for (int round = 0; round < 20; ++round) {
    PetriNet net = testing::random_net(rng, 2, 2, 1);
    SemilinearSet x = SemilinearSet::finite(2, {testing::random_vector(rng, 2, 2)});
    LinearSet a = testing::random_linear(rng, 2, 1, 2), b = testing::random_linear(rng, 2, 1, 2);
    auto small = check_components(net, x, {a});
    auto large = check_components(net, x, {a, b});
    if (std::holds_alternative<HomeSpace>(small.verdict))
      CHECK_FALSE(std::holds_alternative<NotHomeSpace>(large.verdict));
  }
}
