#pragma once

/**
 * Shelves for k >= 4.
 *
 * Under a prime-counting hypothesis some maximum shelf has the form
 *   {1} ∪ P(cbrt n, n] ∪ {p^2 : p in P(cbrt n, sqrt n]} ∪ X ∪ Y ∪ Z
 * with X = small-prime products p*q, Y = middle*large products and
 * Z = middle*middle products. Y comes from a maximum flow on G_k(n), Z from
 * realizing the residual source capacities as a simple graph, X from pairing
 * small primes with free large primes. Nothing guarantees that maximizing the
 * flow first also maximizes |Y| + |Z|, so the result is a valid shelf with a
 * report, not a maximality proof.
 *
 * When the hypothesis fails (every n at desk scale) the structured form is far
 * from optimal, so the pipeline finishes by shifting and then greedily adding
 * every element that still fits, in ≺ order.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "bipartite.hpp"
#include "error.hpp"
#include "flow.hpp"
#include "oracle.hpp"
#include "primes.hpp"
#include "shelf.hpp"
#include "shifting.hpp"

namespace coprime {

// -----------------------------------------------------------------------------
// Exchange and free primes
// -----------------------------------------------------------------------------

/// (A \ B) ∪ C, allowed only when o_p(C) <= k - o_p(A \ B) for every prime p.
/// Throws OccupancyViolation naming the smallest offending prime.
inline Shelf exchange(const Shelf& a, std::span<const Int> remove, std::span<const Int> add,
                      const PrimeTable& table) {
  std::vector<Int> kept;
  for (Int x : a.elements())
    if (std::find(remove.begin(), remove.end(), x) == remove.end())
      kept.push_back(x);
  for (Int x : add)
    if (x < 1 || x > a.n())
      throw InvalidInput("exchange: element outside [1, n]");
  const auto base = occupancy_of(kept, table);
  const auto extra = occupancy_of(add, table);
  std::set<Int> primes;
  for (const auto& [p, c] : base.counts)
    primes.insert(p);
  for (const auto& [p, c] : extra.counts)
    primes.insert(p);
  for (Int p : primes) {
    const Int used = base[p];
    if (used > a.k() || extra[p] > a.k() - used)
      throw OccupancyViolation(p, used + extra[p], a.k());
  }
  for (Int x : add)
    if (std::find(kept.begin(), kept.end(), x) == kept.end())
      kept.push_back(x);
  return Shelf(a.n(), a.k(), std::move(kept));
}

/// Primes q with q^2 > n, q^3 <= n^2 and o_q(A) <= k - 1, ascending.
inline std::vector<Int> free_primes(const Shelf& a, const PrimeTable& table) {
  const auto occ = occupancy(a, table);
  std::vector<Int> out;
  for (Int q : table.primes_in(iroot(a.n(), 2), two_thirds_floor(a.n())))
    if (occ[q] + 1 <= a.k())
      out.push_back(q);
  return out;
}

/// (k-1) pi(n^(2/3)) - (2k-1) pi(sqrt n) > k l - k.
inline bool dwb_hypothesis(Int n, Int k, Int l, const PrimeTable& table) {
  if (k < 4)
    throw InvalidInput("dwb_hypothesis needs k >= 4");
  const auto big = static_cast<std::int64_t>(table.pi(two_thirds_floor(n)));
  const auto mid = static_cast<std::int64_t>(table.pi(iroot(n, 2)));
  const auto kk = static_cast<std::int64_t>(k), ll = static_cast<std::int64_t>(l);
  return (kk - 1) * big - (2 * kk - 1) * mid > kk * ll - kk;
}

// -----------------------------------------------------------------------------
// G_k(n)
// -----------------------------------------------------------------------------

/// G_k(n) with its vertex and arc bookkeeping. Vertex 0 is s, 1 is t, then the
/// middle primes ascending, then the large primes ascending.
struct KFlowNetwork {
  Int n = 0;
  Int k = 0;
  std::vector<Int> left;  ///< P(cbrt n, sqrt n]
  std::vector<Int> right; ///< P(sqrt n, n]
  FlowNetwork network{2, 0, 1};
  std::vector<std::size_t> source_arc; ///< per left prime
  std::vector<std::size_t> sink_arc;   ///< per right prime
  struct PairArc {
    std::size_t left, right, arc;
  };
  std::vector<PairArc> pair_arcs;

  std::size_t left_vertex(std::size_t i) const { return 2 + i; }
  std::size_t right_vertex(std::size_t j) const { return 2 + left.size() + j; }
};

inline KFlowNetwork build_flow_network(Int n, Int k, const PrimeTable& table) {
  if (k < 4)
    throw InvalidInput("flow network is for k >= 4; k = 3 uses the matching graph");
  if (n == 0)
    throw InvalidInput("n must be >= 1");
  KFlowNetwork g;
  g.n = n;
  g.k = k;
  const auto mid = middle_primes(table, n);
  const auto large = large_primes(table, n);
  g.left.assign(mid.begin(), mid.end());
  g.right.assign(large.begin(), large.end());
  g.network = FlowNetwork(2 + g.left.size() + g.right.size(), 0, 1);
  for (std::size_t i = 0; i < g.left.size(); ++i)
    g.source_arc.push_back(g.network.add_arc(0, g.left_vertex(i), static_cast<std::int64_t>(k - 2)));
  for (std::size_t i = 0; i < g.left.size(); ++i)
    for (std::size_t j = 0; j < g.right.size() && g.right[j] <= n / g.left[i]; ++j)
      g.pair_arcs.push_back({i, j, g.network.add_arc(g.left_vertex(i), g.right_vertex(j), 1)});
  for (std::size_t j = 0; j < g.right.size(); ++j)
    g.sink_arc.push_back(g.network.add_arc(g.right_vertex(j), 1, static_cast<std::int64_t>(k - 1)));
  return g;
}

// -----------------------------------------------------------------------------
// Degree sequence realization
// -----------------------------------------------------------------------------

/// Residual degree d_p = (k - 2) - f(s -> p) per middle prime.
struct DegreeSequence {
  std::map<Int, Int> entries;
};

inline DegreeSequence residual_degrees(const KFlowNetwork& g, const Flow& f) {
  DegreeSequence d;
  for (std::size_t i = 0; i < g.left.size(); ++i)
    d.entries[g.left[i]] = (g.k - 2) - static_cast<Int>(f.value[g.source_arc[i]]);
  return d;
}

struct RealizedPairs {
  std::vector<std::pair<Int, Int>> edges; ///< (p, p') with p < p'
  std::vector<Int> products;              ///< ascending
  std::size_t shortfall = 0;              ///< floor(sum d / 2) - |edges|
};

/// Havel-Hakimi style: repeatedly take the vertex of largest remaining degree
/// (smallest prime on ties) and join it to the next largest ones.
inline RealizedPairs realize_pairs(const DegreeSequence& d) {
  std::vector<std::pair<Int, Int>> rem(d.entries.begin(), d.entries.end()); // (prime, degree)
  Int total = 0;
  for (const auto& [p, deg] : rem)
    total += deg;
  std::set<std::pair<Int, Int>> used;
  RealizedPairs out;
  auto by_degree = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  for (;;) {
    std::sort(rem.begin(), rem.end(), by_degree);
    if (rem.empty() || rem.front().second == 0)
      break;
    const Int v = rem.front().first;
    Int want = rem.front().second;
    rem.front().second = 0;
    for (std::size_t t = 1; t < rem.size() && want > 0; ++t) {
      auto& [u, du] = rem[t];
      if (du == 0)
        break;
      const auto key = std::minmax(u, v);
      if (used.count(key))
        continue;
      used.insert(key);
      out.edges.push_back(key);
      --du;
      --want;
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  for (const auto& [p, q] : out.edges)
    out.products.push_back(p * q);
  std::sort(out.products.begin(), out.products.end());
  out.shortfall = static_cast<std::size_t>(total / 2) - out.edges.size();
  return out;
}

// -----------------------------------------------------------------------------
// Assembly
// -----------------------------------------------------------------------------

struct KConstruction {
  Shelf shelf;
  Certificate certificate;
  std::vector<Int> base;
  std::vector<Int> x; ///< small * free large
  std::vector<Int> y; ///< middle * large, from the flow
  std::vector<Int> z; ///< middle * middle, from the realization
  MaxFlowResult flow;
  KFlowNetwork network;
};

/// Builds base, Y, Z, X in that order, then shifts and completes. Requires a
/// prime table and shift order covering n.
inline KConstruction assemble_k(Int n, Int k, const PrimeTable& table, const ShiftOrder& order) {
  if (k < 4)
    throw InvalidInput("assemble_k is for k >= 4");
  if (n == 0)
    throw InvalidInput("n must be >= 1");
  if (table.limit() < std::max<Int>(n, 2) || order.limit() < n)
    throw TableTooSmall(n, std::min(table.limit(), order.limit()));

  KConstruction out{Shelf(n, k), {}, {}, {}, {}, {}, {}, build_flow_network(n, k, table)};
  std::vector<Int> occ(n + 1, 0);
  std::vector<char> member(n + 1, 0);
  auto insert = [&](Int a) {
    member[a] = 1;
    for (Int p : table.prime_divisors(a))
      ++occ[p];
  };

  out.base.push_back(1);
  for (Int p : table.primes_in(iroot(n, 3), n))
    out.base.push_back(p);
  for (Int p : middle_primes(table, n))
    out.base.push_back(p * p);
  for (Int a : out.base)
    insert(a);

  const auto& g = out.network;
  out.flow = max_flow(g.network);
  for (const auto& pa : g.pair_arcs)
    if (out.flow.flow.value[pa.arc] == 1)
      out.y.push_back(g.left[pa.left] * g.right[pa.right]);
  for (Int a : out.y)
    insert(a);

  const auto realized = realize_pairs(residual_degrees(g, out.flow.flow));
  out.z = realized.products;
  for (Int a : out.z)
    insert(a);

  // X: each small prime takes the smallest free prime not yet paired with it.
  const auto free_range = table.primes_in(iroot(n, 2), two_thirds_floor(n));
  bool saturated = true;
  for (Int p : small_primes(table, n)) {
    auto cursor = free_range.begin();
    while (occ[p] < k) {
      while (cursor != free_range.end() && (occ[*cursor] + 1 > k || *cursor > n / p))
        ++cursor;
      if (cursor == free_range.end())
        break;
      const Int product = p * *cursor++;
      out.x.push_back(product);
      insert(product);
    }
    saturated = saturated && occ[p] == k;
  }

  std::vector<Int> structured;
  for (Int a = 1; a <= n; ++a)
    if (member[a])
      structured.push_back(a);
  Shelf shelf(n, k, std::move(structured));

  HeuristicReport report;
  report.structured_size = shelf.size();
  report.flow_value = out.y.size();
  report.z_size = out.z.size();
  report.z_shortfall = realized.shortfall;
  report.x_size = out.x.size();
  report.x_saturated = saturated;
  report.dwb_hypothesis = dwb_hypothesis(n, k, k, table);

  shelf = shift_traced(shelf, table, order).shelf;

  std::fill(member.begin(), member.end(), 0);
  std::fill(occ.begin(), occ.end(), 0);
  for (Int a : shelf.elements())
    insert(a);
  std::vector<Int> completed(shelf.elements().begin(), shelf.elements().end());
  for (Int a : order.ascending()) {
    if (a > n || member[a])
      continue;
    const auto divisors = table.prime_divisors(a);
    if (std::all_of(divisors.begin(), divisors.end(), [&](Int p) { return occ[p] < k; })) {
      insert(a);
      completed.push_back(a);
      ++report.completion_added;
    }
  }
  out.shelf = Shelf(n, k, std::move(completed));
  out.certificate.kind = CertificateKind::ValidityOnly;
  out.certificate.heuristic = report;
  return out;
}

inline KConstruction assemble_k(Int n, Int k) {
  const PrimeTable table(std::max<Int>(n, 2));
  const ShiftOrder order(table);
  return assemble_k(n, k, table, order);
}

// -----------------------------------------------------------------------------
// The naive multiplicity greedy
// -----------------------------------------------------------------------------

/// The k = 3 graph with middle primes duplicated k - 2 times and large primes
/// k - 1 times. Left descending by prime then copy, right ascending.
inline BipartiteGraph build_multiplicity_graph(Int n, Int k, const PrimeTable& table) {
  if (k < 4)
    throw InvalidInput("multiplicity graph is for k >= 4");
  const auto mid = middle_primes(table, n);
  const auto large = large_primes(table, n);
  const auto lc = static_cast<unsigned>(k - 2), rc = static_cast<unsigned>(k - 1);
  std::vector<Slot> left, right;
  for (auto it = mid.rbegin(); it != mid.rend(); ++it)
    for (unsigned c = 0; c < lc; ++c)
      left.push_back({*it, c});
  for (Int q : large)
    for (unsigned c = 0; c < rc; ++c)
      right.push_back({q, c});
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size() && right[j].value <= n / left[i].value; ++j)
      edges.push_back({i, j});
  return BipartiteGraph(std::move(left), std::move(right), std::move(edges), n);
}

struct NaiveGreedy {
  BipartiteGraph graph;
  Matching matching;
};

/// The k = 3 greedy run on the multiplicity graph: each right slot in ascending
/// order takes the largest unmatched left slot, except that a product p*q is
/// never formed twice since a shelf holds it at most once.
inline NaiveGreedy naive_greedy_k(Int n, Int k, const PrimeTable& table) {
  NaiveGreedy out{build_multiplicity_graph(n, k, table), {}};
  const auto& g = out.graph;
  out.matching = Matching(g);
  std::set<std::pair<Int, Int>> formed;
  for (std::size_t j = 0; j < g.right_size(); ++j) {
    const Int q = g.right()[j].value;
    std::size_t pick = npos;
    for (auto i : g.right_neighbors(j)) {
      if (out.matching.left_matched(i) || formed.count({g.left()[i].value, q}))
        continue;
      if (pick == npos || g.left()[i].value > g.left()[pick].value ||
          (g.left()[i].value == g.left()[pick].value && g.left()[i].copy < g.left()[pick].copy))
        pick = i;
    }
    if (pick != npos) {
      out.matching.add(pick, j);
      formed.insert({g.left()[pick].value, q});
    }
  }
  return out;
}

} // namespace coprime
