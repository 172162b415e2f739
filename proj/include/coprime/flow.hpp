#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "error.hpp"

namespace coprime {

struct Arc {
  std::size_t from;
  std::size_t to;
  std::int64_t capacity;
};

/// Directed network with integral capacities.
class FlowNetwork {
public:
  FlowNetwork(std::size_t vertices, std::size_t source, std::size_t sink)
      : vertices_(vertices), source_(source), sink_(sink) {
    if (source >= vertices || sink >= vertices || source == sink)
      throw InvalidInput("bad source or sink");
  }

  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t capacity) {
    if (from >= vertices_ || to >= vertices_ || capacity < 0)
      throw InvalidInput("bad arc");
    arcs_.push_back({from, to, capacity});
    return arcs_.size() - 1;
  }

  std::size_t vertex_count() const { return vertices_; }
  std::size_t source() const { return source_; }
  std::size_t sink() const { return sink_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

private:
  std::size_t vertices_, source_, sink_;
  std::vector<Arc> arcs_;
};

struct Flow {
  std::vector<std::int64_t> value; ///< per arc, indexed like FlowNetwork::arcs()
  std::int64_t total = 0;
};

/// Source side of a cut; its capacity is the sum over arcs leaving it.
struct Cut {
  std::vector<bool> source_side;
  std::int64_t capacity = 0;
};

struct MaxFlowResult {
  Flow flow;
  Cut cut;
};

inline std::int64_t cut_capacity(const FlowNetwork& net, const std::vector<bool>& source_side) {
  std::int64_t c = 0;
  for (const auto& a : net.arcs())
    if (source_side[a.from] && !source_side[a.to])
      c += a.capacity;
  return c;
}

/// Capacity bounds, conservation at every vertex but s and t, and a total equal
/// to both the net outflow of s and the net inflow of t.
inline bool is_legal_flow(const FlowNetwork& net, const Flow& f) {
  if (f.value.size() != net.arcs().size())
    return false;
  std::vector<std::int64_t> balance(net.vertex_count(), 0);
  for (std::size_t i = 0; i < net.arcs().size(); ++i) {
    const auto& a = net.arcs()[i];
    if (f.value[i] < 0 || f.value[i] > a.capacity)
      return false;
    balance[a.from] -= f.value[i];
    balance[a.to] += f.value[i];
  }
  for (std::size_t v = 0; v < net.vertex_count(); ++v)
    if (v != net.source() && v != net.sink() && balance[v] != 0)
      return false;
  return -balance[net.source()] == f.total && balance[net.sink()] == f.total;
}

/// Dinic's algorithm. Arcs are explored in insertion order, so the result is
/// deterministic. The returned cut is the residual-reachable set of s.
inline MaxFlowResult max_flow(const FlowNetwork& net) {
  struct ResidualArc {
    std::size_t to;
    std::int64_t cap;
    std::size_t rev;
  };
  const std::size_t V = net.vertex_count();
  std::vector<std::vector<ResidualArc>> adj(V);
  std::vector<std::pair<std::size_t, std::size_t>> where(net.arcs().size());
  for (std::size_t i = 0; i < net.arcs().size(); ++i) {
    const auto& a = net.arcs()[i];
    where[i] = {a.from, adj[a.from].size()};
    adj[a.from].push_back({a.to, a.capacity, adj[a.to].size() + (a.from == a.to ? 1 : 0)});
    adj[a.to].push_back({a.from, 0, adj[a.from].size() - 1});
  }
  const auto s = net.source(), t = net.sink();
  std::vector<std::size_t> level(V), it(V);
  constexpr auto unreached = std::numeric_limits<std::size_t>::max();

  auto bfs = [&] {
    std::fill(level.begin(), level.end(), unreached);
    std::deque<std::size_t> q{s};
    level[s] = 0;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop_front();
      for (const auto& e : adj[v])
        if (e.cap > 0 && level[e.to] == unreached) {
          level[e.to] = level[v] + 1;
          q.push_back(e.to);
        }
    }
    return level[t] != unreached;
  };

  // Recursion depth is bounded by the BFS level count.
  auto dfs = [&](auto&& self, std::size_t v, std::int64_t pushed) -> std::int64_t {
    if (v == t)
      return pushed;
    for (auto& i = it[v]; i < adj[v].size(); ++i) {
      auto& e = adj[v][i];
      if (e.cap <= 0 || level[e.to] != level[v] + 1)
        continue;
      const auto got = self(self, e.to, std::min(pushed, e.cap));
      if (got > 0) {
        e.cap -= got;
        adj[e.to][e.rev].cap += got;
        return got;
      }
    }
    return 0;
  };

  std::int64_t total = 0;
  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    while (const auto f = dfs(dfs, s, std::numeric_limits<std::int64_t>::max()))
      total += f;
  }

  MaxFlowResult out;
  out.flow.total = total;
  out.flow.value.resize(net.arcs().size());
  for (std::size_t i = 0; i < net.arcs().size(); ++i) {
    const auto [v, k] = where[i];
    out.flow.value[i] = net.arcs()[i].capacity - adj[v][k].cap;
  }
  bfs(); // level now marks the residual-reachable set
  out.cut.source_side.resize(V);
  for (std::size_t v = 0; v < V; ++v)
    out.cut.source_side[v] = level[v] != unreached;
  out.cut.capacity = cut_capacity(net, out.cut.source_side);
  return out;
}

} // namespace coprime
