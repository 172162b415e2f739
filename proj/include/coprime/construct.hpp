#pragma once

/**
 * Certified maximum shelves for k = 1, 2, 3.
 *
 * k = 1 and k = 2 have closed forms. For k = 3 every maximum shelf can be
 * shifted into 1, prime powers and products p*q with p in P(cbrt n, sqrt n],
 * so the only freedom left is how many such products fit: a matching problem
 * on G(n), where each large prime q appears twice because it may divide two
 * products next to q itself.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bipartite.hpp"
#include "error.hpp"
#include "oracle.hpp"
#include "primes.hpp"
#include "shelf.hpp"

namespace coprime {

// -----------------------------------------------------------------------------
// k = 1, 2
// -----------------------------------------------------------------------------

inline Construction construct_k1(Int n, const PrimeTable& table) {
  if (n == 0)
    throw InvalidInput("n must be >= 1");
  std::vector<Int> elements{1};
  for (Int p : table.primes_in(1, n))
    elements.push_back(p);
  return {Shelf(n, 1, std::move(elements)), {}};
}

inline Construction construct_k2(Int n, const PrimeTable& table) {
  if (n == 0)
    throw InvalidInput("n must be >= 1");
  std::vector<Int> elements{1};
  for (Int p : table.primes_in(1, n))
    elements.push_back(p);
  for (Int p : table.primes_in(1, iroot(n, 2)))
    elements.push_back(p * p);
  return {Shelf(n, 2, std::move(elements)), {}};
}

inline Construction construct_k1(Int n) { return construct_k1(n, PrimeTable(n)); }
inline Construction construct_k2(Int n) { return construct_k2(n, PrimeTable(n)); }

// -----------------------------------------------------------------------------
// G(n) and the greedy matching
// -----------------------------------------------------------------------------

/// G(n): left = P(cbrt n, sqrt n] descending, right = P(sqrt n, n] ascending with
/// copies 0 and 1 adjacent, edge p -- (q, c) iff p*q <= n.
inline BipartiteGraph build_graph(Int n, const PrimeTable& table) {
  if (n == 0)
    throw InvalidInput("n must be >= 1");
  const auto mid = middle_primes(table, n);
  const auto large = large_primes(table, n);
  std::vector<Slot> left, right;
  left.reserve(mid.size());
  for (auto it = mid.rbegin(); it != mid.rend(); ++it)
    left.push_back({*it, 0});
  right.reserve(2 * large.size());
  for (Int q : large) {
    right.push_back({q, 0});
    right.push_back({q, 1});
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < left.size(); ++i) {
    const Int limit = n / left[i].value;
    for (std::size_t j = 0; j < large.size() && large[j] <= limit; ++j) {
      edges.push_back({i, 2 * j});
      edges.push_back({i, 2 * j + 1});
    }
  }
  return BipartiteGraph(std::move(left), std::move(right), std::move(edges), n);
}

inline BipartiteGraph build_graph(Int n) { return build_graph(n, PrimeTable(n)); }

/// Right slots in ascending order, each taking the largest unmatched adjacent left
/// vertex. A slot that finds none is skipped for good: the unmatched left set only
/// shrinks, so it could never be served later either.
inline Matching greedy_matching(const BipartiteGraph& g) {
  Matching m(g);
  for (std::size_t j = 0; j < g.right_size(); ++j) {
    std::size_t pick = npos;
    for (auto i : g.right_neighbors(j)) {
      if (m.left_matched(i))
        continue;
      if (pick == npos || g.left()[pick] < g.left()[i])
        pick = i;
    }
    if (pick != npos)
      m.add(pick, j);
  }
  return m;
}

/// F(n): unmatched left primes, ascending.
inline std::vector<Int> leftover_primes(const BipartiteGraph& g, const Matching& m) {
  std::vector<Int> out;
  for (auto i : m.unmatched_left())
    out.push_back(g.left()[i].value);
  std::sort(out.begin(), out.end());
  return out;
}

/// Outcome of the Berge check: no augmenting path and agreement with the
/// reference solver.
struct BergeCheck {
  std::size_t greedy_size = 0;
  std::size_t reference_size = 0;
  std::optional<AugmentingPath> path;

  bool certified() const { return !path && greedy_size == reference_size; }

  Certificate to_certificate() const {
    if (!certified())
      throw CertificateFailure("matching is not maximum: greedy " + std::to_string(greedy_size) +
                               " vs reference " + std::to_string(reference_size));
    Certificate c;
    c.kind = CertificateKind::BergeMatching;
    c.greedy_size = greedy_size;
    c.reference_size = reference_size;
    return c;
  }
};

inline BergeCheck certify_matching(const BipartiteGraph& g, const Matching& m) {
  BergeCheck out;
  out.path = find_augmenting_path(g, m);
  out.greedy_size = m.size();
  out.reference_size = max_matching_reference(g).size();
  return out;
}

// -----------------------------------------------------------------------------
// k = 3
// -----------------------------------------------------------------------------

/// Elements of the k = 3 shelf given G(n) and a matching on it.
inline std::vector<Int> k3_elements(Int n, const PrimeTable& table, const BipartiteGraph& g,
                                    const Matching& m) {
  std::vector<Int> elements{1};
  for (Int p : table.primes_in(1, n))
    for (unsigned i = 1; i <= 3 && pow_leq(p, i, n); ++i)
      elements.push_back(ipow(p, i));
  for (const auto& e : m.pairs())
    elements.push_back(g.left()[e.left].value * g.right()[e.right].value);
  const auto leftover = leftover_primes(g, m);
  for (std::size_t t = 0; t + 1 < leftover.size(); t += 2)
    elements.push_back(leftover[t] * leftover[t + 1]);
  return elements;
}

/// {1} ∪ {p^i <= n : i <= 3} ∪ M(n) ∪ {a_1 a_2, a_3 a_4, ...} over F(n), with a
/// Berge certificate for M(n).
inline Construction assemble_k3(Int n, const PrimeTable& table) {
  const auto g = build_graph(n, table);
  const auto m = greedy_matching(g);
  Construction c{Shelf(n, 3, k3_elements(n, table, g, m)), {}};
  c.certificate = certify_matching(g, m).to_certificate();
  return c;
}

inline Construction assemble_k3(Int n) { return assemble_k3(n, PrimeTable(n)); }

/// cn_3(n) from the closed count 1 + pi(n) + pi_sq + pi_cb + |M(n)| + floor(|F(n)| / 2).
inline std::size_t cn3(Int n, const PrimeTable& table) {
  if (n == 0)
    throw InvalidInput("n must be >= 1");
  const auto g = build_graph(n, table);
  const auto m = greedy_matching(g);
  return 1 + table.pi(n) + table.pi(iroot(n, 2)) + table.pi(iroot(n, 3)) + m.size() +
         (g.left_size() - m.size()) / 2;
}

inline std::size_t cn3(Int n) { return cn3(n, PrimeTable(n)); }

// -----------------------------------------------------------------------------
// Increment classifier
// -----------------------------------------------------------------------------

enum class IncrementClass { Prime, CubeOrPq, Square, Else };

inline const char* to_string(IncrementClass c) {
  switch (c) {
  case IncrementClass::Prime:
    return "prime";
  case IncrementClass::CubeOrPq:
    return "cube-or-pq";
  case IncrementClass::Square:
    return "square";
  case IncrementClass::Else:
    return "else";
  }
  return "?";
}

/// Classifies the step n -> n+1. The p*q case needs cbrt n < q <= sqrt n < p.
inline IncrementClass increment_class(Int n, const PrimeTable& table) {
  if (n == 0)
    throw InvalidInput("n must be >= 1");
  const Int m = checked_add(n, 1);
  if (table.is_prime(m))
    return IncrementClass::Prime;
  if (const Int r = iroot(m, 3); ipow(r, 3) == m && table.is_prime(r))
    return IncrementClass::CubeOrPq;
  const auto f = table.factorize(m);
  if (f.omega() == 2 && f.pairs()[0].exponent == 1 && f.pairs()[1].exponent == 1) {
    const Int q = f.pairs()[0].prime, p = f.pairs()[1].prime;
    if (q > iroot(n, 3) && q <= iroot(n, 2) && p > iroot(n, 2))
      return IncrementClass::CubeOrPq;
  }
  if (const Int r = iroot(m, 2); r * r == m && table.is_prime(r))
    return IncrementClass::Square;
  return IncrementClass::Else;
}

/// Admissible values of cn(n+1) - cn(n) for a class.
inline std::vector<std::size_t> allowed_increments(IncrementClass c) {
  switch (c) {
  case IncrementClass::Prime:
    return {1};
  case IncrementClass::CubeOrPq:
    return {0, 1};
  case IncrementClass::Square:
    return {0, 1, 2};
  case IncrementClass::Else:
    return {0};
  }
  return {};
}

// -----------------------------------------------------------------------------
// Subset obstruction
// -----------------------------------------------------------------------------

/// pi(sqrt n) - pi(n^(1/k)) >= 2.
inline bool obstruction_hypothesis(Int n, Int k, const PrimeTable& table) {
  const Int hi = table.pi(iroot(n, 2));
  const Int lo = table.pi(iroot(n, static_cast<unsigned>(k)));
  return hi >= lo + 2;
}

struct ObstructionBound {
  Int bound = 0;
  std::size_t shelves = 0;
};

/// max over maximum shelves A of min over a in A with omega(a) > 1 of ssp(a)^k.
/// From this m on, no maximum (n, k)-shelf extends to a maximum (m, k)-shelf.
inline ObstructionBound subset_obstruction_bound(Int n, Int k, const OracleConfig& config = {}) {
  if (k <= 2)
    throw Inapplicable("subset obstruction bound needs k > 2");
  const PrimeTable table(std::max<Int>(n, 2));
  if (!obstruction_hypothesis(n, k, table))
    throw Inapplicable("pi(sqrt n) - pi(n^(1/k)) < 2");
  const auto shelves = enumerate_max_shelves(n, k, config);
  ObstructionBound out;
  out.shelves = shelves.size();
  for (const auto& a : shelves) {
    std::optional<Int> inner;
    for (Int x : a.elements()) {
      if (x < 2)
        continue;
      const auto s = table.ssp(x);
      if (!s)
        continue;
      const Int v = ipow(*s, static_cast<unsigned>(k));
      inner = inner ? std::min(*inner, v) : v;
    }
    if (!inner)
      throw Inapplicable("a maximum shelf has no element with two prime divisors");
    out.bound = std::max(out.bound, *inner);
  }
  return out;
}

} // namespace coprime
