#pragma once

// Fixtures and brute-force oracles shared by the unit tests and the
// acceptance binary. Nothing here calls the decision procedures under test.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pnhs/core.hpp"
#include "pnhs/semilinear.hpp"

namespace testing {

using pnhs::Configuration;
using pnhs::LinearSet;
using pnhs::PetriNet;
using pnhs::SemilinearSet;
using pnhs::Vector;

inline PetriNet mover() { return PetriNet(2, {{{1, 0}, {0, 1}, "t"}}); }
inline PetriNet consumer() { return PetriNet(2, {{{1, 1}, {0, 0}, "t"}}); }
inline PetriNet producer() { return PetriNet(2, {{{0, 0}, {1, 0}, "t"}}); }
inline PetriNet drainer() { return PetriNet(2, {{{1, 0}, {0, 0}, "t"}}); }

/// Every vector of length n with entries in [0, bound], lexicographic.
inline std::vector<Vector> box(std::size_t n, std::int64_t bound) {
  std::vector<Vector> out;
  Vector v(n, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = n;
    while (i > 0 && v[i - 1] == bound) v[--i] = 0;
    if (i == 0) return out;
    ++v[i - 1];
  }
}

/// Direct membership in a linear set by enumerating coefficients.
inline bool naive_member(const LinearSet& l, const Vector& x) {
  if (l.dim() != x.size()) return false;
  std::function<bool(std::size_t, Vector)> go = [&](std::size_t j, Vector rest) {
    for (auto r : rest)
      if (r < 0) return false;
    if (j == l.periods().size()) return pnhs::is_zero(rest);
    Vector cur = rest;
    while (true) {
      if (go(j + 1, cur)) return true;
      bool ok = true;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        cur[i] -= l.periods()[j][i];
        if (cur[i] < 0) ok = false;
      }
      if (!ok) return false;
    }
  };
  return go(0, pnhs::sub(x, l.base()));
}

inline bool naive_member(const SemilinearSet& s, const Vector& x) {
  for (const auto& l : s.components())
    if (naive_member(l, x)) return true;
  return false;
}

/// Forward closure by BFS; nullopt when more than `budget` states appear.
inline std::optional<std::vector<Configuration>> closure(const PetriNet& net, const Configuration& start,
                                                         std::size_t budget = 20000) {
  std::unordered_set<Configuration, pnhs::VectorHash> seen{start};
  std::deque<Configuration> q{start};
  while (!q.empty()) {
    Configuration c = q.front();
    q.pop_front();
    for (const auto& a : net.actions()) {
      bool ok = true;
      Configuration n = c;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < a.pre[i]) ok = false;
        n[i] = c[i] - a.pre[i] + a.post[i];
      }
      if (ok && seen.insert(n).second) {
        if (seen.size() > budget) return std::nullopt;
        q.push_back(n);
      }
    }
  }
  std::vector<Configuration> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Whether `start` reaches a configuration satisfying `goal`; nullopt when
/// more than `budget` states are seen without a hit.
inline std::optional<bool> can_reach(const PetriNet& net, const Configuration& start,
                                     const std::function<bool(const Configuration&)>& goal,
                                     std::size_t budget = 20000) {
  if (goal(start)) return true;
  std::unordered_set<Configuration, pnhs::VectorHash> seen{start};
  std::deque<Configuration> q{start};
  while (!q.empty()) {
    Configuration c = q.front();
    q.pop_front();
    for (const auto& a : net.actions()) {
      bool ok = true;
      Configuration n = c;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < a.pre[i]) ok = false;
        n[i] = c[i] - a.pre[i] + a.post[i];
      }
      if (!ok || !seen.insert(n).second) continue;
      if (goal(n)) return true;
      if (seen.size() > budget) return std::nullopt;
      q.push_back(n);
    }
  }
  return false;
}

inline std::optional<bool> can_decrease(const PetriNet& net, const Configuration& x, std::size_t budget = 20000) {
  auto n = pnhs::norm(x);
  return can_reach(net, x, [n](const Configuration& c) { return pnhs::norm(c) < n; }, budget);
}

/// Minimal elements of a finite set of vectors.
inline std::vector<Vector> minimal(std::vector<Vector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Vector> out;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : pts)
      if (q != p && pnhs::leq(q, p)) dominated = true;
    if (!dominated) out.push_back(p);
  }
  return out;
}

/// Random net with small entries.
inline PetriNet random_net(std::mt19937_64& rng, std::size_t dim, std::size_t actions, int max_entry) {
  std::uniform_int_distribution<int> e(0, max_entry);
  PetriNet net(dim);
  for (std::size_t a = 0; a < actions; ++a) {
    Vector pre(dim), post(dim);
    for (auto& x : pre) x = e(rng);
    for (auto& x : post) x = e(rng);
    net.add_action(pre, post);
  }
  return net;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t dim, int max_entry) {
  std::uniform_int_distribution<int> e(0, max_entry);
  Vector v(dim);
  for (auto& x : v) x = e(rng);
  return v;
}

inline LinearSet random_linear(std::mt19937_64& rng, std::size_t dim, std::size_t max_periods, int max_entry) {
  std::uniform_int_distribution<std::size_t> k(0, max_periods);
  std::size_t n = k(rng);
  std::vector<Vector> periods;
  for (std::size_t j = 0; j < n; ++j) periods.push_back(random_vector(rng, dim, max_entry));
  return LinearSet(random_vector(rng, dim, max_entry), periods);
}

inline SemilinearSet random_semilinear(std::mt19937_64& rng, std::size_t dim, std::size_t max_components,
                                       std::size_t max_periods, int max_entry) {
  std::uniform_int_distribution<std::size_t> c(0, max_components);
  std::vector<LinearSet> comps;
  std::size_t n = c(rng);
  for (std::size_t i = 0; i < n; ++i) comps.push_back(random_linear(rng, dim, max_periods, max_entry));
  return SemilinearSet(dim, comps);
}

}  // namespace testing
