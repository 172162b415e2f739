#pragma once

/**
 * Bipartite graphs whose vertices are labelled slots (value, copy), matchings
 * over them, and the two independent tools used to certify a matching:
 * a Hopcroft-Karp reference solver and a shortest augmenting path search.
 * By Berge's theorem a matching is maximum exactly when the second one
 * comes back empty.
 */

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"
#include "primes.hpp"

namespace coprime {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// A vertex label: a prime together with the index of its duplicate.
struct Slot {
  Int value = 0;
  unsigned copy = 0;

  friend bool operator==(const Slot&, const Slot&) = default;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

struct Edge {
  std::size_t left;
  std::size_t right;
};

/// Bipartite graph in compressed adjacency form. Edges are deduplicated and every
/// adjacency list is sorted by vertex index.
class BipartiteGraph {
public:
  BipartiteGraph() = default;

  BipartiteGraph(std::vector<Slot> left, std::vector<Slot> right, std::vector<Edge> edges,
                 Int n = 0)
      : n_(n), left_(std::move(left)), right_(std::move(right)) {
    auto key = [](const Edge& e) { return std::pair{e.left, e.right}; };
    std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) { return key(a) < key(b); });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [&](const Edge& a, const Edge& b) { return key(a) == key(b); }),
                edges.end());
    left_off_.assign(left_.size() + 1, 0);
    right_off_.assign(right_.size() + 1, 0);
    for (const auto& e : edges) {
      if (e.left >= left_.size() || e.right >= right_.size())
        throw InvalidInput("edge endpoint out of range");
      ++left_off_[e.left + 1];
      ++right_off_[e.right + 1];
    }
    for (std::size_t i = 0; i < left_.size(); ++i)
      left_off_[i + 1] += left_off_[i];
    for (std::size_t j = 0; j < right_.size(); ++j)
      right_off_[j + 1] += right_off_[j];
    left_adj_.resize(edges.size());
    right_adj_.resize(edges.size());
    auto lpos = left_off_;
    auto rpos = right_off_;
    for (const auto& e : edges) {
      left_adj_[lpos[e.left]++] = e.right;
      right_adj_[rpos[e.right]++] = e.left;
    }
  }

  Int n() const { return n_; }
  std::span<const Slot> left() const { return left_; }
  std::span<const Slot> right() const { return right_; }
  std::size_t left_size() const { return left_.size(); }
  std::size_t right_size() const { return right_.size(); }
  std::size_t edge_count() const { return left_adj_.size(); }

  std::span<const std::size_t> left_neighbors(std::size_t i) const {
    return {left_adj_.data() + left_off_[i], left_adj_.data() + left_off_[i + 1]};
  }
  std::span<const std::size_t> right_neighbors(std::size_t j) const {
    return {right_adj_.data() + right_off_[j], right_adj_.data() + right_off_[j + 1]};
  }

  bool has_edge(std::size_t i, std::size_t j) const {
    auto nb = left_neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), j);
  }

private:
  Int n_ = 0;
  std::vector<Slot> left_, right_;
  std::vector<std::size_t> left_off_, right_off_;
  std::vector<std::size_t> left_adj_, right_adj_;
};

class Matching {
public:
  Matching() = default;
  explicit Matching(const BipartiteGraph& g)
      : mate_left_(g.left_size(), npos), mate_right_(g.right_size(), npos) {}

  std::size_t mate_of_left(std::size_t i) const { return mate_left_[i]; }
  std::size_t mate_of_right(std::size_t j) const { return mate_right_[j]; }
  bool left_matched(std::size_t i) const { return mate_left_[i] != npos; }
  bool right_matched(std::size_t j) const { return mate_right_[j] != npos; }

  void add(std::size_t i, std::size_t j) {
    if (left_matched(i) || right_matched(j))
      throw InvalidInput("vertex already matched");
    mate_left_[i] = j;
    mate_right_[j] = i;
  }

  std::size_t size() const { return size_of(mate_left_); }

  /// Matched pairs ordered by left index.
  std::vector<Edge> pairs() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < mate_left_.size(); ++i)
      if (mate_left_[i] != npos)
        out.push_back({i, mate_left_[i]});
    return out;
  }

  std::vector<std::size_t> unmatched_left() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mate_left_.size(); ++i)
      if (mate_left_[i] == npos)
        out.push_back(i);
    return out;
  }

  std::span<const std::size_t> mate_left() const { return mate_left_; }
  std::span<const std::size_t> mate_right() const { return mate_right_; }

  friend bool operator==(const Matching&, const Matching&) = default;

private:
  static std::size_t size_of(const std::vector<std::size_t>& v) {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](std::size_t m) { return m != npos; }));
  }

  std::vector<std::size_t> mate_left_, mate_right_;
};

/// Symmetric mates over graph edges only.
inline bool is_matching(const BipartiteGraph& g, const Matching& m) {
  if (m.mate_left().size() != g.left_size() || m.mate_right().size() != g.right_size())
    return false;
  for (std::size_t i = 0; i < g.left_size(); ++i) {
    const auto j = m.mate_of_left(i);
    if (j == npos)
      continue;
    if (j >= g.right_size() || m.mate_of_right(j) != i || !g.has_edge(i, j))
      return false;
  }
  for (std::size_t j = 0; j < g.right_size(); ++j) {
    const auto i = m.mate_of_right(j);
    if (i != npos && (i >= g.left_size() || m.mate_of_left(i) != j))
      return false;
  }
  return true;
}

/// Alternating path a_1, b_1, ..., a_r, b_r: a_1 and b_r unmatched,
/// {a_t, b_t} outside the matching, {b_t, a_{t+1}} inside it.
struct AugmentingPath {
  std::vector<std::size_t> left;  ///< a_1 .. a_r
  std::vector<std::size_t> right; ///< b_1 .. b_r

  /// Number of edges on the path.
  std::size_t length() const { return left.size() + right.size() - 1; }
};

inline bool is_augmenting_path(const BipartiteGraph& g, const Matching& m, const AugmentingPath& path) {
  const auto r = path.left.size();
  if (r == 0 || path.right.size() != r)
    return false;
  for (std::size_t t = 0; t < r; ++t)
    if (path.left[t] >= g.left_size() || path.right[t] >= g.right_size())
      return false;
  if (m.left_matched(path.left.front()) || m.right_matched(path.right.back()))
    return false;
  std::vector<bool> seen_l(g.left_size()), seen_r(g.right_size());
  for (std::size_t t = 0; t < r; ++t) {
    const auto a = path.left[t], b = path.right[t];
    if (seen_l[a] || seen_r[b])
      return false;
    seen_l[a] = seen_r[b] = true;
    if (!g.has_edge(a, b) || m.mate_of_left(a) == b)
      return false;
    if (t + 1 < r && m.mate_of_right(b) != path.left[t + 1])
      return false;
  }
  return true;
}

/// Shortest M-augmenting path by breadth-first search from every free left vertex
/// at once. Ties are broken by the lowest vertex indices.
inline std::optional<AugmentingPath> find_augmenting_path(const BipartiteGraph& g, const Matching& m) {
  if (!is_matching(g, m))
    throw InvalidInput("find_augmenting_path: not a matching of the graph");
  std::vector<std::size_t> parent_of_right(g.right_size(), npos); // left vertex we came from
  std::vector<bool> seen_left(g.left_size(), false);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < g.left_size(); ++i)
    if (!m.left_matched(i)) {
      seen_left[i] = true;
      queue.push_back(i);
    }
  while (!queue.empty()) {
    const auto a = queue.front();
    queue.pop_front();
    for (auto b : g.left_neighbors(a)) {
      if (parent_of_right[b] != npos || m.mate_of_left(a) == b)
        continue;
      parent_of_right[b] = a;
      if (!m.right_matched(b)) {
        AugmentingPath path;
        for (auto cur = b;;) {
          const auto from = parent_of_right[cur];
          path.right.push_back(cur);
          path.left.push_back(from);
          if (!m.left_matched(from))
            break;
          cur = m.mate_of_left(from);
        }
        std::reverse(path.left.begin(), path.left.end());
        std::reverse(path.right.begin(), path.right.end());
        return path;
      }
      const auto next = m.mate_of_right(b);
      if (!seen_left[next]) {
        seen_left[next] = true;
        queue.push_back(next);
      }
    }
  }
  return std::nullopt;
}

/// Maximum matching by Hopcroft-Karp: phases of vertex-disjoint shortest augmenting paths.
inline Matching max_matching_reference(const BipartiteGraph& g) {
  Matching m(g);
  const std::size_t L = g.left_size();
  constexpr std::size_t inf = npos;
  std::vector<std::size_t> dist(L);
  std::vector<std::size_t> mate_l(L, npos), mate_r(g.right_size(), npos);
  std::vector<std::size_t> it(L);

  auto bfs = [&] {
    std::deque<std::size_t> q;
    bool found = false;
    for (std::size_t i = 0; i < L; ++i) {
      if (mate_l[i] == npos) {
        dist[i] = 0;
        q.push_back(i);
      } else {
        dist[i] = inf;
      }
    }
    while (!q.empty()) {
      const auto a = q.front();
      q.pop_front();
      for (auto b : g.left_neighbors(a)) {
        const auto nxt = mate_r[b];
        if (nxt == npos) {
          found = true;
        } else if (dist[nxt] == inf) {
          dist[nxt] = dist[a] + 1;
          q.push_back(nxt);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the layered graph.
  auto dfs = [&](std::size_t root) {
    std::vector<std::size_t> stack{root};
    std::vector<std::size_t> via; // right vertex used to leave stack[t]
    while (!stack.empty()) {
      const auto a = stack.back();
      auto nb = g.left_neighbors(a);
      bool advanced = false;
      while (it[a] < nb.size()) {
        const auto b = nb[it[a]++];
        const auto nxt = mate_r[b];
        if (nxt == npos) {
          via.push_back(b);
          for (std::size_t t = 0; t < stack.size(); ++t) {
            mate_l[stack[t]] = via[t];
            mate_r[via[t]] = stack[t];
          }
          return true;
        }
        if (dist[nxt] == dist[a] + 1) {
          via.push_back(b);
          stack.push_back(nxt);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[a] = inf;
        stack.pop_back();
        if (!via.empty())
          via.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t i = 0; i < L; ++i)
      if (mate_l[i] == npos)
        dfs(i);
  }
  for (std::size_t i = 0; i < L; ++i)
    if (mate_l[i] != npos)
      m.add(i, mate_l[i]);
  return m;
}

} // namespace coprime
