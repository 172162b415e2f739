// coprime: command-line front end for shelf constructions, verification,
// tables, graph export and the oracle.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "coprime/coprime.hpp"

using namespace coprime;

namespace {

enum Exit { Ok = 0, Usage = 1, Invalid = 2, CertFail = 3 };

struct RunConfig {
  Int n = 0;
  Int k = 3;
  Int lo = 1;
  Int hi = 0;
  std::string format;
  Int oracle_cap = OracleConfig{}.max_n;
  std::string out;
  std::string file;
  bool dot = false;
  unsigned threads = 0;
};

OracleConfig oracle_config(const RunConfig& c) {
  OracleConfig o;
  o.max_n = c.oracle_cap;
  o.enumerate_max_n = std::min(o.enumerate_max_n, c.oracle_cap);
  return o;
}

std::string elements_text(const Shelf& s) {
  std::string out;
  for (Int a : s.elements())
    out += (out.empty() ? "" : " ") + std::to_string(a);
  return out;
}

Construction construct(Int n, Int k, const PrimeTable& table) {
  switch (k) {
  case 1:
    return construct_k1(n, table);
  case 2:
    return construct_k2(n, table);
  case 3:
    return assemble_k3(n, table);
  default: {
    const ShiftOrder order(table);
    auto c = assemble_k(n, k, table, order);
    return {c.shelf, c.certificate};
  }
  }
}

int cmd_construct(const RunConfig& c, std::ostream& os) {
  const PrimeTable table(std::max<Int>(c.n, 2));
  auto result = construct(c.n, c.k, table);
  if (!is_shelf(result.shelf, table))
    throw OccupancyViolation(*first_violation(result.shelf, table), 0, c.k);
  attach_oracle(result, oracle_config(c));
  if (c.format == "text") {
    os << "n = " << c.n << ", k = " << c.k << ", size = " << result.shelf.size() << "\n";
    os << "elements: " << elements_text(result.shelf) << "\n";
    os << "certificate: " << to_string(result.certificate.kind) << "\n";
  } else {
    os << dump_shelf(result.shelf, result.certificate);
  }
  return result.certificate.consistent_with(result.shelf.size()) ? Ok : CertFail;
}

int cmd_verify(const RunConfig& c, std::ostream& os) {
  std::ifstream in(c.file);
  if (!in)
    throw InvalidInput("cannot read " + c.file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto text = buffer.str();
  const auto shelf = parse_shelf(text);
  std::optional<CertificateKind> claimed;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.contains("certificate") && j["certificate"].contains("kind"))
      claimed = certificate_kind_from_string(j["certificate"]["kind"].get<std::string>());
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput("malformed certificate field");
  }

  const PrimeTable table(std::max<Int>(shelf.n(), 2));
  const auto occ = occupancy(shelf, table);
  if (const auto p = first_violation(shelf, table)) {
    os << "invalid: occupancy " << occ[*p] << " > " << shelf.k() << " at p = " << *p << "\n";
    return Invalid;
  }
  os << "valid\n";
  os << "size: " << shelf.size() << "\n";
  const auto [top_prime, top_count] = occ.max();
  os << "max occupancy: " << top_count;
  if (top_count)
    os << " at p = " << top_prime;
  os << "\n";

  std::optional<std::size_t> best;
  if (shelf.n() <= c.oracle_cap)
    best = max_shelf_bruteforce(shelf.n(), shelf.k(), oracle_config(c)).cn;
  else if (shelf.k() == 3)
    best = cn3(shelf.n(), table);
  if (best) {
    os << "optimum: " << *best << "\n";
    os << "gap: " << *best - shelf.size() << "\n";
  } else {
    os << "gap: unknown (n above oracle cap)\n";
  }
  if (claimed && *claimed != CertificateKind::ValidityOnly && best && *best != shelf.size()) {
    os << "certificate " << to_string(*claimed) << " does not hold\n";
    return CertFail;
  }
  return Ok;
}

struct TableRow {
  std::size_t cn = 0;
  IncrementClass cls = IncrementClass::Else;
};

int cmd_table(const RunConfig& c, std::ostream& os) {
  if (c.lo < 1 || c.lo > c.hi)
    throw InvalidInput("table needs 1 <= lo <= hi");
  const PrimeTable table(c.hi + 2);
  const ShiftOrder* order = nullptr;
  std::unique_ptr<ShiftOrder> order_storage;
  if (c.k >= 4) {
    order_storage = std::make_unique<ShiftOrder>(table);
    order = order_storage.get();
  }
  const std::size_t count = c.hi - c.lo + 2;
  std::vector<TableRow> rows(count);
  auto work = [&](std::size_t start, std::size_t stride) {
    for (std::size_t i = start; i < count; i += stride) {
      const Int n = c.lo + i;
      if (c.k == 3)
        rows[i].cn = cn3(n, table);
      else if (c.k <= 2)
        rows[i].cn = construct(n, c.k, table).shelf.size();
      else
        rows[i].cn = assemble_k(n, c.k, table, *order).shelf.size();
      rows[i].cls = increment_class(n, table);
    }
  };
  const unsigned workers =
      std::max(1u, std::min<unsigned>(c.threads ? c.threads : std::thread::hardware_concurrency(), count));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w)
    pool.emplace_back(work, w, workers);
  work(0, workers);
  for (auto& t : pool)
    t.join();

  const char* status = c.k <= 3 ? "certified" : "heuristic";
  const bool csv = c.format != "text";
  os << (csv ? "n,cn,increment_class,delta,status\n" : "n cn increment_class delta status\n");
  const char sep = csv ? ',' : ' ';
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const auto delta = static_cast<long long>(rows[i + 1].cn) - static_cast<long long>(rows[i].cn);
    os << c.lo + i << sep << rows[i].cn << sep << to_string(rows[i].cls) << sep << delta << sep << status
       << "\n";
  }
  return Ok;
}

std::string slot_text(const Slot& s) { return std::to_string(s.value) + "." + std::to_string(s.copy); }

int cmd_demo_1202(const RunConfig& c, std::ostream& os) {
  constexpr Int n = 1202, k = 4;
  const PrimeTable table(n);
  const auto ng = naive_greedy_k(n, k, table);
  const auto reference = max_matching_reference(ng.graph);
  const auto path = find_augmenting_path(ng.graph, ng.matching);
  if (c.dot) {
    write_dot(os, ng.graph, &ng.matching, "G4_1202");
    return path && reference.size() > ng.matching.size() ? Ok : CertFail;
  }
  os << "n = " << n << ", k = " << k << "\n";
  os << "left slots: " << ng.graph.left_size() << ", right slots: " << ng.graph.right_size()
     << ", edges: " << ng.graph.edge_count() << "\n";
  os << "naive greedy matching: " << ng.matching.size() << "\n";
  os << "reference maximum matching: " << reference.size() << "\n";
  os << "gap: " << reference.size() - ng.matching.size() << "\n";
  if (!path) {
    os << "no augmenting path found\n";
    return CertFail;
  }
  os << "augmenting path (prime.copy):";
  for (std::size_t i = 0; i < path->left.size(); ++i) {
    os << " " << slot_text(ng.graph.left()[path->left[i]]);
    os << " " << slot_text(ng.graph.right()[path->right[i]]);
  }
  os << "\n";
  os << "augmenting path (primes):";
  for (std::size_t i = 0; i < path->left.size(); ++i)
    os << (i ? "," : " ") << ng.graph.left()[path->left[i]].value << ","
       << ng.graph.right()[path->right[i]].value;
  os << "\n";
  os << "endpoints unmatched: "
     << (!ng.matching.left_matched(path->left.front()) && !ng.matching.right_matched(path->right.back())
             ? "yes"
             : "no")
     << "\n";
  return reference.size() > ng.matching.size() ? Ok : CertFail;
}

int cmd_graph(const RunConfig& c, std::ostream& os) {
  const PrimeTable table(std::max<Int>(c.n, 2));
  if (c.k <= 3) {
    const auto g = build_graph(c.n, table);
    const auto m = greedy_matching(g);
    write_dot(os, g, &m, "G_" + std::to_string(c.n));
  } else {
    const auto g = build_flow_network(c.n, c.k, table);
    const auto r = max_flow(g.network);
    write_dot(os, g, &r.flow);
  }
  return Ok;
}

int cmd_oracle(const RunConfig& c, std::ostream& os) {
  const auto r = max_shelf_bruteforce(c.n, c.k, oracle_config(c));
  Certificate cert;
  cert.kind = CertificateKind::OracleExact;
  cert.oracle_size = r.cn;
  if (c.format == "text") {
    os << "cn = " << r.cn << "\n";
    os << "witness: " << elements_text(r.witness) << "\n";
    os << "nodes: " << r.node_count << "\n";
  } else {
    os << dump_shelf(r.witness, cert);
  }
  return Ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coprime shelves: constructions, certificates and tables."};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("COPRIME_ORACLE_CAP")) {
    try {
      cfg.oracle_cap = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "COPRIME_ORACLE_CAP is not a number\n";
      return Usage;
    }
  }

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--oracle-cap", cfg.oracle_cap,
                    "Largest n for the exhaustive oracle (default 40, env COPRIME_ORACLE_CAP)");
    sub->add_option("--out", cfg.out, "Write output to PATH instead of standard output");
  };
  auto add_nk = [&](CLI::App* sub, bool k_required) {
    sub->add_option("--n", cfg.n, "Upper end of [1, n]")->required()->check(CLI::PositiveNumber);
    auto* k = sub->add_option("--k", cfg.k, "Occupancy cap per prime")->check(CLI::PositiveNumber);
    if (k_required)
      k->required();
  };

  auto* construct_cmd = app.add_subcommand("construct", "Build a shelf for (n, k) and print it");
  add_nk(construct_cmd, true);
  construct_cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->default_str("json");
  add_common(construct_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Check a shelf document and report its gap");
  verify_cmd->add_option("file", cfg.file, "Shelf JSON document")->required();
  add_common(verify_cmd);

  auto* table_cmd = app.add_subcommand("table", "Print cn_k(n) for n in [lo, hi]");
  table_cmd->add_option("--lo", cfg.lo, "First n")->check(CLI::PositiveNumber);
  table_cmd->add_option("--hi", cfg.hi, "Last n")->required();
  table_cmd->add_option("--k", cfg.k, "Occupancy cap per prime (default 3)")->check(CLI::PositiveNumber);
  table_cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "text"}))
      ->default_str("csv");
  table_cmd->add_option("--threads", cfg.threads, "Worker threads (default: hardware concurrency)");
  add_common(table_cmd);

  auto* demo_cmd = app.add_subcommand("demo-1202", "Show the naive greedy failing at n = 1202, k = 4");
  demo_cmd->add_flag("--dot", cfg.dot, "Emit the multiplicity graph with the greedy matching as DOT");
  add_common(demo_cmd);

  auto* graph_cmd = app.add_subcommand("graph", "Export G(n) (k <= 3) or G_k(n) (k >= 4) as DOT");
  add_nk(graph_cmd, false);
  graph_cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"dot"}))
      ->default_str("dot");
  add_common(graph_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive maximum shelf for small n");
  add_nk(oracle_cmd, true);
  oracle_cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->default_str("json");
  add_common(oracle_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Usage;
  }

  std::ostringstream buffer;
  int code = Ok;
  try {
    if (*construct_cmd)
      code = cmd_construct(cfg, buffer);
    else if (*verify_cmd)
      code = cmd_verify(cfg, buffer);
    else if (*table_cmd)
      code = cmd_table(cfg, buffer);
    else if (*demo_cmd)
      code = cmd_demo_1202(cfg, buffer);
    else if (*graph_cmd)
      code = cmd_graph(cfg, buffer);
    else if (*oracle_cmd)
      code = cmd_oracle(cfg, buffer);
  } catch (const OccupancyViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Invalid;
  } catch (const CertificateFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return CertFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  }

  if (cfg.out.empty()) {
    std::cout << buffer.str();
  } else {
    std::ofstream out(cfg.out);
    if (!out) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return Usage;
    }
    out << buffer.str();
  }
  return code;
}
