// Acceptance suite: one PASS/FAIL line per criterion. Set COPRIME_SLOW=1 for
// the extended ranges.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "coprime/coprime.hpp"

using namespace coprime;

namespace {

bool slow_mode() {
  const char* v = std::getenv("COPRIME_SLOW");
  return v && std::string(v) != "0" && std::string(v) != "";
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fail_at(const std::string& what) { return "first failure: " + what; }

// 1. constructions equal the exhaustive oracle for k <= 3
Outcome ac1() {
  const Int top = slow_mode() ? 40 : 30;
  for (Int n = 1; n <= top; ++n) {
    const PrimeTable t(std::max<Int>(n, 2));
    const std::size_t got[] = {construct_k1(n, t).shelf.size(), construct_k2(n, t).shelf.size(),
                               assemble_k3(n, t).shelf.size()};
    for (Int k = 1; k <= 3; ++k) {
      const auto cn = max_shelf_bruteforce(n, k).cn;
      if (got[k - 1] != cn)
        return {false, fail_at("n=" + std::to_string(n) + " k=" + std::to_string(k) + " construction " +
                               std::to_string(got[k - 1]) + " oracle " + std::to_string(cn))};
    }
  }
  return {true, "n <= " + std::to_string(top) + ", k in {1,2,3}, 0 mismatches"};
}

// 2. anchor values at (6,2) and (9,2)
Outcome ac2() {
  if (max_shelf_bruteforce(6, 2).cn != 5)
    return {false, "cn_2(6) != 5"};
  const auto six = enumerate_max_shelves(6, 2);
  if (std::find(six.begin(), six.end(), Shelf(6, 2, {1, 2, 3, 5, 6})) == six.end())
    return {false, "{1,2,3,5,6} not among maximum (6,2)-shelves"};
  const auto nine = enumerate_max_shelves(9, 2);
  for (const auto& s : nine)
    if (s.contains(6))
      return {false, "6 lies in a maximum (9,2)-shelf"};
  return {true, "cn_2(6) = 5; " + std::to_string(six.size()) + " maximum (6,2)-shelves; none of " +
                    std::to_string(nine.size()) + " maximum (9,2)-shelves contains 6"};
}

// 3. the greedy matching on G(n) is maximum, by Berge and by reference size
Outcome ac3() {
  const Int top = 100000;
  const PrimeTable t(slow_mode() ? 1000000 : top);
  std::size_t largest = 0;
  auto check = [&](Int n) -> std::optional<std::string> {
    const auto g = build_graph(n, t);
    const auto m = greedy_matching(g);
    const auto c = certify_matching(g, m);
    if (!c.certified())
      return "n=" + std::to_string(n) + " greedy " + std::to_string(c.greedy_size) + " reference " +
             std::to_string(c.reference_size) + (c.path ? " with augmenting path" : "");
    largest = std::max(largest, c.greedy_size);
    return std::nullopt;
  };
  for (Int n = 1; n <= top; ++n)
    if (auto e = check(n))
      return {false, fail_at(*e)};
  std::string extra;
  if (slow_mode()) {
    std::mt19937_64 rng(1202);
    std::uniform_int_distribution<Int> pick(top + 1, 1000000);
    for (int i = 0; i < 2000; ++i)
      if (auto e = check(pick(rng)))
        return {false, fail_at(*e)};
    extra = " plus 2000 sampled n <= 10^6";
  }
  return {true, "every n <= 10^5" + extra + "; largest matching " + std::to_string(largest)};
}

// 4. increments of cn_3 fall in the case set of the class of n + 1
Outcome ac4() {
  const PrimeTable t(10001);
  std::size_t per_class[4] = {};
  for (Int n = 1; n <= 10000; ++n) {
    const auto cls = increment_class(n, t);
    const auto delta = cn3(n + 1, t) - cn3(n, t);
    const auto allowed = allowed_increments(cls);
    if (std::find(allowed.begin(), allowed.end(), delta) == allowed.end())
      return {false, fail_at("n=" + std::to_string(n) + " class " + to_string(cls) + " delta " +
                             std::to_string(delta))};
    if (cls == IncrementClass::Prime && delta != 1)
      return {false, fail_at("prime class with delta " + std::to_string(delta))};
    if (cls == IncrementClass::Else && delta != 0)
      return {false, fail_at("else class with delta " + std::to_string(delta))};
    ++per_class[static_cast<int>(cls)];
  }
  std::ostringstream os;
  os << "n <= 10^4; prime " << per_class[0] << ", cube-or-pq " << per_class[1] << ", square " << per_class[2]
     << ", else " << per_class[3];
  return {true, os.str()};
}

Shelf random_shelf(Int n, Int k, const PrimeTable& t, std::mt19937_64& rng) {
  std::vector<Int> candidates(n);
  for (Int a = 1; a <= n; ++a)
    candidates[a - 1] = a;
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::bernoulli_distribution take(std::uniform_real_distribution<double>(0.2, 1.0)(rng));
  std::vector<Int> occ(n + 1, 0), chosen;
  for (Int a : candidates) {
    if (!take(rng))
      continue;
    const auto ps = t.prime_divisors(a);
    if (std::all_of(ps.begin(), ps.end(), [&](Int p) { return occ[p] < k; })) {
      for (Int p : ps)
        ++occ[p];
      chosen.push_back(a);
    }
  }
  return Shelf(n, k, std::move(chosen));
}

// 5. shifting keeps size, validity and maximality, and is idempotent
Outcome ac5() {
  const PrimeTable t60(60);
  std::mt19937_64 rng(5);
  std::size_t random_checked = 0;
  for (Int n = 1; n <= 60; ++n) {
    const PrimeTable t(std::max<Int>(n, 2));
    const ShiftOrder order(t);
    for (Int k = 1; k <= 4; ++k)
      for (int trial = 0; trial < 500; ++trial) {
        const auto a = random_shelf(n, k, t60, rng);
        const auto s = shift_traced(a, t, order).shelf;
        const auto tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
        if (s.size() != a.size())
          return {false, fail_at(tag + " size changed")};
        if (!is_shelf(s, t))
          return {false, fail_at(tag + " shift is not a shelf")};
        if (shift_traced(s, t, order).shelf != s)
          return {false, fail_at(tag + " not idempotent")};
        ++random_checked;
      }
  }

  OracleConfig wide;
  wide.enumerate_max_n = 30;
  std::size_t maxima = 0;
  for (Int n = 1; n <= 30; ++n)
    for (Int k = 1; k <= 3; ++k) {
      if (n > 25 && k != 3)
        continue;
      const PrimeTable t(std::max<Int>(n, 2));
      const ShiftOrder order(t);
      const auto cn = max_shelf_bruteforce(n, k).cn;
      for (const auto& a : enumerate_max_shelves(n, k, wide)) {
        const auto r = shift_traced(a, t, order);
        const auto tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
        if (r.shelf.size() != cn || !is_shelf(r.shelf, t))
          return {false, fail_at(tag + " maximum shelf shifted to a non-maximum one")};
        for (const auto& st : r.stages)
          if (st.e != std::min<Int>(k, st.log_floor))
            return {false, fail_at(tag + " e at p=" + std::to_string(st.prime) + " is " + std::to_string(st.e))};
        if (k == 3 && !shift_structure_check(r.shelf, t))
          return {false, fail_at(tag + " structure check")};
        ++maxima;
      }
    }
  return {true, std::to_string(random_checked) + " random shelves (500 per n <= 60, k <= 4); " +
                    std::to_string(maxima) + " maximum shelves (n <= 25 for k <= 2, n <= 30 for k = 3)"};
}

// 6. the naive k = 4 greedy at n = 1202 is not maximum
Outcome ac6() {
  const std::string cmd = std::string(COPRIME_CLI_PATH) + " demo-1202 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    return {false, "cannot run the demo"};
  std::string out;
  char buf[4096];
  while (const auto got = fread(buf, 1, sizeof buf, pipe))
    out.append(buf, got);
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  const PrimeTable t(1202);
  const auto ng = naive_greedy_k(1202, 4, t);
  const auto reference = max_matching_reference(ng.graph);
  const auto path = find_augmenting_path(ng.graph, ng.matching);
  if (code != 0 || !path || !is_augmenting_path(ng.graph, ng.matching, *path) ||
      reference.size() <= ng.matching.size())
    return {false, "exit " + std::to_string(code) + "; output:\n" + out};
  std::string primes;
  for (std::size_t i = 0; i < path->left.size(); ++i)
    primes += (i ? "," : "") + std::to_string(ng.graph.left()[path->left[i]].value) + "," +
              std::to_string(ng.graph.right()[path->right[i]].value);
  return {true, "greedy " + std::to_string(ng.matching.size()) + " < maximum " + std::to_string(reference.size()) +
                    "; path " + primes};
}

// 7. assemble_k for k in {4, 5}: valid, gap against the oracle recorded, tight
Outcome ac7() {
  std::size_t gaps = 0;
  for (Int n = 1; n <= 30; ++n)
    for (Int k = 4; k <= 5; ++k) {
      const auto c = assemble_k(n, k);
      Construction con{c.shelf, c.certificate};
      attach_oracle(con, {});
      const auto tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      if (!is_shelf(c.shelf))
        return {false, fail_at(tag + " invalid shelf")};
      const auto cn = max_shelf_bruteforce(n, k).cn;
      if (c.shelf.size() != cn) {
        if (con.certificate.oracle_size != cn)
          return {false, fail_at(tag + " gap not recorded")};
        ++gaps;
      }
    }
  const Int top = 10000;
  const PrimeTable t(top);
  const ShiftOrder order(t);
  std::vector<Int> occ(top + 1);
  for (Int n = 1; n <= top; ++n)
    for (Int k = 4; k <= 5; ++k) {
      const auto c = assemble_k(n, k, t, order);
      const auto tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      std::fill(occ.begin(), occ.begin() + n + 1, 0);
      for (Int a : c.shelf.elements())
        for (Int p : t.prime_divisors(a))
          if (++occ[p] > k)
            return {false, fail_at(tag + " occupancy above k at p=" + std::to_string(p))};
      for (Int a = 2; a <= n; ++a) {
        if (c.shelf.contains(a))
          continue;
        const auto ps = t.prime_divisors(a);
        if (std::all_of(ps.begin(), ps.end(), [&](Int p) { return occ[p] < k; }))
          return {false, fail_at(tag + " " + std::to_string(a) + " still fits")};
      }
      if (!c.shelf.contains(1))
        return {false, fail_at(tag + " 1 missing")};
    }
  return {true, "n <= 30: " + std::to_string(gaps) + " gaps against the oracle; n <= 10^4: valid and tight"};
}

// 8. every max flow on G_k(n) is legal and equals its cut
Outcome ac8() {
  const Int top = 10000;
  const PrimeTable t(top);
  std::int64_t largest = 0;
  for (Int n = 1; n <= top; ++n)
    for (Int k = 4; k <= 5; ++k) {
      const auto g = build_flow_network(n, k, t);
      const auto r = max_flow(g.network);
      const auto tag = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      if (!is_legal_flow(g.network, r.flow))
        return {false, fail_at(tag + " illegal flow")};
      if (!r.cut.source_side[g.network.source()] || r.cut.source_side[g.network.sink()])
        return {false, fail_at(tag + " cut does not separate s and t")};
      if (r.flow.total != r.cut.capacity || r.cut.capacity != cut_capacity(g.network, r.cut.source_side))
        return {false, fail_at(tag + " flow " + std::to_string(r.flow.total) + " cut " +
                               std::to_string(r.cut.capacity))};
      largest = std::max(largest, r.flow.total);
    }
  return {true, "n <= 10^4, k in {4,5}; largest flow " + std::to_string(largest)};
}

} // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 oracle equivalence k <= 3", ac1},      {"AC2 anchor values (6,2) and (9,2)", ac2},
      {"AC3 Berge certification n <= 10^5", ac3}, {"AC4 increment classes n <= 10^4", ac4},
      {"AC5 shifting properties", ac5},            {"AC6 n = 1202 counterexample", ac6},
      {"AC7 k >= 4 heuristic sanity", ac7},        {"AC8 flow legality", ac8},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
