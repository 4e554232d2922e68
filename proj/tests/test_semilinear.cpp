#include <doctest.h>

#include <random>

#include "pnhs/diophantine.hpp"
#include "pnhs/semilinear.hpp"
#include "support.hpp"

using namespace pnhs;
using testing::box;
using testing::naive_member;

namespace {

using Vs = std::vector<Vector>;

bool same_set_up_to(const SemilinearSet& a, const SemilinearSet& b, std::int64_t bound) {
  for (const auto& x : box(a.dim(), bound))
    if (naive_member(a, x) != naive_member(b, x)) return false;
  return true;
}

}  // namespace

TEST_CASE("member") {
  LinearSet l({1, 1}, {{1, 0}});
  CHECK(member(l, {3, 1}));
  CHECK_FALSE(member(l, {0, 5}));
  CHECK_FALSE(member(SemilinearSet(2), {0, 0}));
  CHECK_THROWS_AS(member(l, {1, 1, 1}), DimensionMismatch);
}

TEST_CASE("linear set normalization") {
  LinearSet l({1, 1}, {{0, 0}, {1, 0}, {1, 0}, {0, 2}});
  CHECK(l.periods() == Vs{{0, 2}, {1, 0}});
  CHECK(l.at({1, 2}) == Vector{3, 3});
}

TEST_CASE("semilinear normalization keeps the denoted set") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 100; ++round) {
    std::size_t dim = 1 + round % 3;
    std::vector<LinearSet> comps;
    for (int i = 0; i < 4; ++i) comps.push_back(testing::random_linear(rng, dim, 2, 2));
    SemilinearSet s(dim, comps);
    for (const auto& x : box(dim, dim == 3 ? 6 : 10)) {
      bool expect = false;
      for (const auto& c : comps) expect = expect || naive_member(c, x);
      CHECK(naive_member(s, x) == expect);
    }
  }
}

TEST_CASE("union") {
  SemilinearSet s = SemilinearSet::of(LinearSet({0, 0}, {{1, 0}}));
  SemilinearSet t(2, {LinearSet({0, 1}, {{0, 1}}), LinearSet({5, 5})});
  CHECK(unite(s, t).size() == 3);
  CHECK(unite(s, SemilinearSet(2)) == s);
  CHECK_THROWS_AS(unite(s, SemilinearSet(3)), DimensionMismatch);
}

TEST_CASE("image_affine") {
  SemilinearSet s = SemilinearSet::of(LinearSet({1, 0}, {{0, 1}}));
  CHECK(image_affine(s, {{1, 0}, {0, 1}}, {0, 0}) == s);
  SemilinearSet img = image_affine(s, {{1, 2}}, {0});
  CHECK(img == SemilinearSet::of(LinearSet({1}, {{2}})));
  CHECK_THROWS_AS(image_affine(s, {{1, 2, 3}}, {0}), DimensionMismatch);
}

TEST_CASE("complement_upward") {
  SemilinearSet c = complement_upward(MinBasis{2, {{1, 1}}});
  SemilinearSet expect(2, {LinearSet({0, 0}, {{0, 1}}), LinearSet({0, 0}, {{1, 0}})});
  CHECK(same_set_up_to(c, expect, 10));
  CHECK(same_set_up_to(complement_upward(MinBasis{3, {}}), SemilinearSet::universe(3), 6));
  CHECK(complement_upward(MinBasis{3, {{0, 0, 0}}}).empty());
  CHECK_THROWS_AS(complement_upward(MinBasis{2, {{1, 1}, {1, 2}}}), NotAntichain);
}

TEST_CASE("complement_upward partitions N^n") {
  std::mt19937_64 rng(22);
  for (int round = 0; round < 100; ++round) {
    std::size_t dim = 1 + round % 3;
    Vs pts;
    for (int i = 0; i < 3; ++i) pts.push_back(testing::random_vector(rng, dim, 3));
    MinBasis b = MinBasis::minimal_of(dim, pts);
    REQUIRE(b.is_antichain());
    SemilinearSet c = complement_upward(b);
    for (const auto& x : box(dim, dim == 3 ? 6 : 10)) {
      bool up = false;
      for (const auto& m : b.elements) up = up || leq(m, x);
      CHECK(naive_member(c, x) != up);
    }
  }
}

TEST_CASE("min_solutions examples") {
  MinSolutions a = min_solutions(ConstraintSystem(2).equal({1, 1}, 2));
  CHECK(a.inhomogeneous == Vs{{0, 2}, {1, 1}, {2, 0}});
  CHECK(a.hilbert.empty());

  MinSolutions b = min_solutions(ConstraintSystem(2).equal({2, -1}, 0));
  CHECK(b.inhomogeneous == Vs{{0, 0}});
  CHECK(b.hilbert == Vs{{1, 2}});

  MinSolutions c = min_solutions(ConstraintSystem(3).equal({1, 2, -3}, 0));
  CHECK(c.hilbert == Vs{{0, 3, 2}, {1, 1, 1}, {3, 0, 1}});

  MinSolutions none = min_solutions(ConstraintSystem(2).equal({1, 1}, -1));
  CHECK(none.inhomogeneous.empty());
  CHECK(none.hilbert.empty());
}

TEST_CASE("hilbert basis agrees with enumeration") {
  // Minimal nonzero solutions with coords <= 6 of x1 + 2x2 - 3x3 = 0.
  Vs sols;
  for (const auto& x : box(3, 6))
    if (!is_zero(x) && x[0] + 2 * x[1] - 3 * x[2] == 0) sols.push_back(x);
  CHECK(testing::minimal(sols) == min_solutions(ConstraintSystem(3).equal({1, 2, -3}, 0)).hilbert);
}

TEST_CASE("min_solutions on random systems: antichains and coverage") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coef(-2, 2), cst(0, 3), kind(0, 1);
  for (int round = 0; round < 60; ++round) {
    std::size_t n = 2 + round % 2;
    ConstraintSystem sys(n);
    bool equalities_only = true;
    for (int r = 0; r < 1 + round % 2; ++r) {
      Vector row(n);
      for (auto& x : row) x = coef(rng);
      if (kind(rng)) {
        sys.equal(row, cst(rng));
      } else {
        sys.at_least(row, cst(rng));
        equalities_only = false;
      }
    }
    MinSolutions m = min_solutions(sys);
    if (equalities_only) {
      CHECK(MinBasis{n, m.inhomogeneous}.is_antichain());
      CHECK(MinBasis{n, m.hilbert}.is_antichain());
    } else {
      // With inequalities the projected generators need not be an
      // antichain (x1 >= x2 needs both (1,0) and (1,1)), but none is
      // redundant.
      for (std::size_t i = 0; i < m.hilbert.size(); ++i) {
        Vs others = m.hilbert;
        others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
        CHECK_FALSE(monoid_member(m.hilbert[i], others));
      }
      for (std::size_t i = 0; i < m.inhomogeneous.size(); ++i)
        for (std::size_t j = 0; j < m.inhomogeneous.size(); ++j)
          if (i != j && leq(m.inhomogeneous[j], m.inhomogeneous[i]))
            CHECK_FALSE(monoid_member(sub(m.inhomogeneous[i], m.inhomogeneous[j]), m.hilbert));
    }
    SemilinearSet s = constraints_to_semilinear(sys);
    for (const auto& x : box(n, n == 3 ? 6 : 8)) CHECK(naive_member(s, x) == sys.satisfied_by(x));
  }
}

TEST_CASE("integer and rational feasibility") {
  ConstraintSystem bad(1);
  bad.at_least({1}, 1).at_most({1}, 0);
  CHECK_FALSE(rational_feasible(bad));
  CHECK(integer_feasible(bad, 1000) == false);

  ConstraintSystem parity(1);
  parity.equal({2}, 1);
  CHECK(rational_feasible(parity));
  CHECK(integer_feasible(parity, 1000) == false);

  ConstraintSystem ok(2);
  ok.equal({1, -1}, 3);
  CHECK(integer_feasible(ok, 1000) == true);
}

TEST_CASE("constraints_to_semilinear") {
  ConstraintSystem le(2);
  le.at_most({1, 0}, 0);
  CHECK(constraints_to_semilinear(le) == SemilinearSet::of(LinearSet({0, 0}, {{0, 1}})));

  ConstraintSystem ge(2);
  ge.at_least({1, 1}, 2);
  SemilinearSet s = constraints_to_semilinear(ge);
  for (const auto& x : box(2, 10)) CHECK(naive_member(s, x) == (x[0] + x[1] >= 2));

  ConstraintSystem bad(2);
  bad.at_least({1, 0}, 1).at_most({1, 0}, 0);
  CHECK(constraints_to_semilinear(bad).empty());
}

TEST_CASE("intersect") {
  SemilinearSet diag = SemilinearSet::of(LinearSet({0, 0}, {{1, 1}}));
  ConstraintSystem le(2);
  le.at_most({1, 0}, 0);
  SemilinearSet r = intersect(diag, constraints_to_semilinear(le));
  CHECK(same_set_up_to(r, SemilinearSet::finite(2, {{0, 0}}), 10));
  CHECK(intersect(diag, SemilinearSet(2)).empty());
  CHECK(same_set_up_to(intersect(diag, diag), diag, 10));
}

TEST_CASE("set operations agree with enumeration on random presentations") {
  std::mt19937_64 rng(24);
  for (int round = 0; round < 100; ++round) {
    std::size_t dim = 1 + round % 3;
    std::int64_t bound = dim == 3 ? 7 : 10;
    SemilinearSet s = testing::random_semilinear(rng, dim, 2, 3, 3);
    SemilinearSet t = testing::random_semilinear(rng, dim, 2, 3, 3);
    SemilinearSet u = unite(s, t);
    SemilinearSet i = intersect(s, t);
    for (const auto& x : box(dim, bound)) {
      bool in_s = naive_member(s, x), in_t = naive_member(t, x);
      CHECK(member(s, x) == in_s);
      CHECK(naive_member(u, x) == (in_s || in_t));
      CHECK(naive_member(i, x) == (in_s && in_t));
    }
  }
}

TEST_CASE("image_affine commutes with membership") {
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<int> e(0, 2);
  for (int round = 0; round < 60; ++round) {
    std::size_t n = 1 + round % 3, d = 1 + (round / 3) % 2;
    SemilinearSet s = testing::random_semilinear(rng, n, 2, 2, 2);
    std::vector<Vector> m(d, Vector(n));
    for (auto& row : m)
      for (auto& x : row) x = e(rng);
    Vector off = testing::random_vector(rng, d, 2);
    SemilinearSet img = image_affine(s, m, off);
    std::set<Vector> expected;
    for (const auto& x : box(n, 6))
      if (naive_member(s, x)) {
        Vector y = off;
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < n; ++c) y[r] += m[r][c] * x[c];
        expected.insert(y);
        CHECK(naive_member(img, y));
      }
    // Every image member with small coordinates must come from some preimage.
    for (const auto& y : box(d, 4))
      if (naive_member(img, y)) {
        bool found = expected.count(y) > 0;
        for (const auto& x : box(n, 8)) {
          if (found) break;
          if (!naive_member(s, x)) continue;
          Vector z = off;
          for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < n; ++c) z[r] += m[r][c] * x[c];
          found = z == y;
        }
        CHECK(found);
      }
  }
}

TEST_CASE("partial vectors") {
  PartialVector v({omega, 1});
  CHECK(instances_of(v) == LinearSet({0, 1}, {{1, 0}}));
  CHECK(instances_of(PartialVector::concrete({2, 3})) == LinearSet({2, 3}));
  CHECK(instances_of(PartialVector::all_omega(2)) == LinearSet({0, 0}, {{1, 0}, {0, 1}}));
  CHECK(v.has_instance({7, 1}));
  CHECK_FALSE(v.has_instance({7, 2}));
  CHECK(v.instantiate(4) == Vector{4, 1});
  CHECK(v.to_string() == "(w,1)");
  CHECK(PartialVector::all_omega(2).subsumes(v));
  CHECK(PartialVector({Entry(3), Entry(0)}) < v);
}

TEST_CASE("monoid membership") {
  CHECK(monoid_member({5}, {{2}, {3}}));
  CHECK_FALSE(monoid_member({1}, {{2}, {3}}));
  CHECK(monoid_member({0, 0}, {}));
  CHECK(monoid_member({3, 3}, {{1, 1}, {0, 0}}));
}
