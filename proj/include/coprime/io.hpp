#pragma once

// Serialization: the JSON shelf document and DOT exports of G(n) and G_k(n).
// Field order, array order and vertex/edge emission order are fixed so that
// identical inputs give byte-identical output.

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bipartite.hpp"
#include "error.hpp"
#include "kflow.hpp"
#include "shelf.hpp"

namespace coprime {

using ordered_json = nlohmann::ordered_json;

inline ordered_json certificate_to_json(const Certificate& c) {
  ordered_json j;
  j["kind"] = to_string(c.kind);
  if (c.oracle_size)
    j["oracle_size"] = *c.oracle_size;
  if (c.greedy_size)
    j["greedy_size"] = *c.greedy_size;
  if (c.reference_size)
    j["reference_size"] = *c.reference_size;
  if (c.heuristic) {
    const auto& h = *c.heuristic;
    ordered_json r;
    r["structured_size"] = h.structured_size;
    r["flow_value"] = h.flow_value;
    r["z_size"] = h.z_size;
    r["z_shortfall"] = h.z_shortfall;
    r["x_size"] = h.x_size;
    r["x_saturated"] = h.x_saturated;
    r["dwb_hypothesis"] = h.dwb_hypothesis;
    r["completion_added"] = h.completion_added;
    j["heuristic"] = std::move(r);
  }
  return j;
}

/// {"n", "k", "size", "elements", "certificate"} in that order.
inline ordered_json shelf_to_json(const Shelf& shelf, const Certificate& certificate) {
  ordered_json j;
  j["n"] = shelf.n();
  j["k"] = shelf.k();
  j["size"] = shelf.size();
  j["elements"] = std::vector<Int>(shelf.elements().begin(), shelf.elements().end());
  j["certificate"] = certificate_to_json(certificate);
  return j;
}

inline std::string dump_shelf(const Shelf& shelf, const Certificate& certificate) {
  return shelf_to_json(shelf, certificate).dump(2) + "\n";
}

/// Reads n, k and elements; size and certificate are informational and ignored.
/// Malformed documents throw InvalidInput.
inline Shelf shelf_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<Int>();
    const auto k = j.at("k").get<Int>();
    auto elements = j.at("elements").get<std::vector<Int>>();
    return Shelf(n, k, std::move(elements));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed shelf document: ") + e.what());
  }
}

inline Shelf parse_shelf(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("not JSON: ") + e.what());
  }
  return shelf_from_json(j);
}

// -----------------------------------------------------------------------------
// DOT
// -----------------------------------------------------------------------------

namespace detail {
inline std::string left_name(const Slot& s, bool with_copy) {
  return "p" + std::to_string(s.value) + (with_copy ? "_" + std::to_string(s.copy) : "");
}
inline std::string right_name(const Slot& s) {
  return "q" + std::to_string(s.value) + "_" + std::to_string(s.copy);
}
} // namespace detail

/// Undirected DOT of a slot graph. Left vertices print as p<prime> (p<prime>_<copy>
/// when copies exist), right slots as q<prime>_<copy>; matched edges carry
/// matched=true.
inline void write_dot(std::ostream& os, const BipartiteGraph& g, const Matching* m = nullptr,
                      const std::string& name = "G") {
  bool copies = false;
  for (const auto& s : g.left())
    copies = copies || s.copy != 0;
  os << "graph " << name << " {\n";
  os << "  rankdir=LR;\n";
  for (const auto& s : g.left())
    os << "  " << detail::left_name(s, copies) << " [side=left];\n";
  for (const auto& s : g.right())
    os << "  " << detail::right_name(s) << " [side=right];\n";
  for (std::size_t i = 0; i < g.left_size(); ++i)
    for (auto j : g.left_neighbors(i)) {
      os << "  " << detail::left_name(g.left()[i], copies) << " -- " << detail::right_name(g.right()[j]);
      if (m && m->mate_of_left(i) == j)
        os << " [matched=true]";
      os << ";\n";
    }
  os << "}\n";
}

/// Directed DOT of G_k(n); every arc carries capacity and, if given, flow.
inline void write_dot(std::ostream& os, const KFlowNetwork& g, const Flow* f = nullptr) {
  auto name = [&](std::size_t v) -> std::string {
    if (v == 0)
      return "s";
    if (v == 1)
      return "t";
    if (v < 2 + g.left.size())
      return "p" + std::to_string(g.left[v - 2]);
    return "q" + std::to_string(g.right[v - 2 - g.left.size()]);
  };
  os << "digraph G" << g.k << "_" << g.n << " {\n";
  os << "  rankdir=LR;\n";
  for (std::size_t v = 0; v < g.network.vertex_count(); ++v)
    os << "  " << name(v) << ";\n";
  const auto& arcs = g.network.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    os << "  " << name(arcs[i].from) << " -> " << name(arcs[i].to) << " [capacity=" << arcs[i].capacity;
    if (f)
      os << ", flow=" << f->value[i];
    os << "];\n";
  }
  os << "}\n";
}

} // namespace coprime
