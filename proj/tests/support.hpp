#pragma once

// Naive reference implementations used only by tests. Each one takes the
// slowest obvious route so that it shares no code path with the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "coprime/coprime.hpp"

namespace coprime::testing {

inline bool naive_is_prime(Int m) {
  if (m < 2)
    return false;
  for (Int d = 2; d * d <= m; ++d)
    if (m % d == 0)
      return false;
  return true;
}

inline std::vector<std::pair<Int, unsigned>> naive_factor(Int a) {
  std::vector<std::pair<Int, unsigned>> out;
  for (Int d = 2; d * d <= a; ++d) {
    unsigned e = 0;
    while (a % d == 0) {
      a /= d;
      ++e;
    }
    if (e)
      out.push_back({d, e});
  }
  if (a > 1)
    out.push_back({a, 1});
  return out;
}

/// Occupancy cap check by scanning every candidate prime and every element.
inline bool naive_is_shelf(const std::vector<Int>& a, Int k) {
  Int top = 1;
  for (Int x : a)
    top = std::max(top, x);
  for (Int p = 2; p <= top; ++p) {
    if (!naive_is_prime(p))
      continue;
    Int c = 0;
    for (Int x : a)
      c += (x % p == 0);
    if (c > k)
      return false;
  }
  return true;
}

/// Every subset of [1, n] by bitmask; returns (max size, number of maxima).
inline std::pair<std::size_t, std::size_t> bitmask_max_shelf(Int n, Int k) {
  std::size_t best = 0, count = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<Int> a;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size < best)
      continue;
    a.clear();
    for (Int i = 0; i < n; ++i)
      if (mask >> i & 1)
        a.push_back(i + 1);
    if (!naive_is_shelf(a, k))
      continue;
    if (size > best) {
      best = size;
      count = 1;
    } else {
      ++count;
    }
  }
  return {best, count};
}

/// Maximum matching size by dynamic programming over (left prefix, used right set).
/// Needs at most 20 right vertices.
inline std::size_t exhaustive_matching_size(const BipartiteGraph& g) {
  const std::size_t R = g.right_size(), L = g.left_size();
  const std::size_t masks = std::size_t{1} << R;
  std::vector<std::size_t> best(masks, 0), next(masks, 0);
  // best[mask]: largest matching of the processed left prefix whose right ends lie in mask.
  std::vector<char> reach(masks, 0), reach_next(masks, 0);
  reach[0] = 1;
  for (std::size_t i = 0; i < L; ++i) {
    next = best;
    reach_next = reach;
    for (std::size_t mask = 0; mask < masks; ++mask) {
      if (!reach[mask])
        continue;
      for (auto j : g.left_neighbors(i)) {
        const auto bit = std::size_t{1} << j;
        if (mask & bit)
          continue;
        reach_next[mask | bit] = 1;
        next[mask | bit] = std::max(next[mask | bit], best[mask] + 1);
      }
    }
    best.swap(next);
    reach.swap(reach_next);
  }
  std::size_t out = 0;
  for (std::size_t mask = 0; mask < masks; ++mask)
    if (reach[mask])
      out = std::max(out, best[mask]);
  return out;
}

inline BipartiteGraph random_graph(std::mt19937_64& rng, std::size_t max_side, double density) {
  std::uniform_int_distribution<std::size_t> side(0, max_side);
  std::bernoulli_distribution coin(density);
  const auto l = side(rng), r = side(rng);
  std::vector<Slot> left, right;
  for (std::size_t i = 0; i < l; ++i)
    left.push_back({i, 0});
  for (std::size_t j = 0; j < r; ++j)
    right.push_back({j, 0});
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (coin(rng))
        edges.push_back({i, j});
  return BipartiteGraph(std::move(left), std::move(right), std::move(edges));
}

/// A random matching: shuffled edges, each kept with probability 0.7 when both ends are free.
inline Matching random_matching(const BipartiteGraph& g, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.left_size(); ++i)
    for (auto j : g.left_neighbors(i))
      edges.push_back({i, j});
  std::shuffle(edges.begin(), edges.end(), rng);
  Matching m(g);
  std::bernoulli_distribution keep(0.7);
  for (const auto& e : edges)
    if (!m.left_matched(e.left) && !m.right_matched(e.right) && keep(rng))
      m.add(e.left, e.right);
  return m;
}

/// A valid (n, k)-shelf grown from a shuffled candidate list.
inline Shelf random_shelf(Int n, Int k, std::mt19937_64& rng) {
  std::vector<Int> candidates;
  for (Int a = 1; a <= n; ++a)
    candidates.push_back(a);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::uniform_real_distribution<double> density(0.2, 1.0);
  std::bernoulli_distribution take(density(rng));
  std::vector<Int> chosen;
  for (Int a : candidates) {
    if (!take(rng))
      continue;
    chosen.push_back(a);
    if (!naive_is_shelf(chosen, k))
      chosen.pop_back();
  }
  return Shelf(n, k, std::move(chosen));
}

} // namespace coprime::testing
