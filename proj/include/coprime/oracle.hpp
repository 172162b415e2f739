#pragma once

/**
 * Exhaustive ground truth for small n.
 *
 * Depth-first include/exclude search over 2..n with 1 always taken. Elements
 * whose every prime p has at most k multiples in [n] can never cause a
 * violation and are forced in before the search. The bound groups the
 * remaining elements by smallest prime factor: a group of multiples of p can
 * contribute at most k - o_p more elements.
 */

#include <algorithm>
#include <cstdint>
#include <vector>

#include "error.hpp"
#include "primes.hpp"
#include "shelf.hpp"

namespace coprime {

struct OracleConfig {
  Int max_n = 40;        ///< cap for max_shelf_bruteforce
  Int enumerate_max_n = 25;
};

struct OracleResult {
  Int n = 0;
  Int k = 0;
  std::size_t cn = 0;
  Shelf witness{1, 1};
  std::uint64_t node_count = 0;
};

enum class SearchOrder { Ascending, Descending };

namespace detail {

class ShelfSearch {
public:
  ShelfSearch(Int n, Int k, SearchOrder order) : n_(n), k_(k), table_(std::max<Int>(n, 2)) {
    occ_.assign(n + 1, 0);
    chosen_.push_back(1);
    for (Int a = 2; a <= n; ++a) {
      auto divisors = table_.prime_divisors(a);
      const bool forced = std::all_of(divisors.begin(), divisors.end(),
                                      [&](Int p) { return n / p <= k; });
      if (forced) {
        chosen_.push_back(a);
        for (Int p : divisors)
          ++occ_[p];
      } else {
        rest_.push_back(a);
        divisors_.push_back(std::move(divisors));
      }
    }
    if (order == SearchOrder::Descending) {
      std::reverse(rest_.begin(), rest_.end());
      std::reverse(divisors_.begin(), divisors_.end());
    }
    remaining_.assign(n + 1, 0);
    for (const auto& d : divisors_) {
      ++remaining_[d.front()];
      classes_.push_back(d.front());
    }
    std::sort(classes_.begin(), classes_.end());
    classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
  }

  OracleResult maximize() {
    best_size_ = 0;
    dfs_max(0);
    OracleResult out;
    out.n = n_;
    out.k = k_;
    out.cn = best_size_;
    out.witness = Shelf(n_, k_, best_);
    out.node_count = nodes_;
    return out;
  }

  std::vector<Shelf> enumerate(std::size_t target) {
    target_ = target;
    found_.clear();
    dfs_all(0);
    return std::move(found_);
  }

  std::uint64_t nodes() const { return nodes_; }

private:
  std::size_t bound() const {
    std::size_t b = 0;
    for (Int p : classes_)
      b += std::min<Int>(remaining_[p], k_ - occ_[p]);
    return b;
  }

  bool fits(std::size_t i) const {
    return std::all_of(divisors_[i].begin(), divisors_[i].end(), [&](Int p) { return occ_[p] < k_; });
  }

  template <class Leaf, class Prune>
  void dfs(std::size_t i, Leaf&& leaf, Prune&& prune) {
    ++nodes_;
    if (prune(chosen_.size() + bound()))
      return;
    if (i == rest_.size()) {
      leaf();
      return;
    }
    const auto& d = divisors_[i];
    --remaining_[d.front()];
    if (fits(i)) {
      for (Int p : d)
        ++occ_[p];
      chosen_.push_back(rest_[i]);
      dfs(i + 1, leaf, prune);
      chosen_.pop_back();
      for (Int p : d)
        --occ_[p];
    }
    dfs(i + 1, leaf, prune);
    ++remaining_[d.front()];
  }

  void dfs_max(std::size_t i) {
    dfs(
        i,
        [&] {
          best_size_ = chosen_.size();
          best_ = chosen_;
        },
        [&](std::size_t ub) { return ub <= best_size_; });
  }

  void dfs_all(std::size_t i) {
    dfs(
        i,
        [&] {
          if (chosen_.size() == target_)
            found_.emplace_back(n_, k_, chosen_);
        },
        [&](std::size_t ub) { return ub < target_; });
  }

  Int n_, k_;
  PrimeTable table_;
  std::vector<Int> occ_;
  std::vector<Int> remaining_;
  std::vector<Int> classes_;
  std::vector<Int> rest_;
  std::vector<std::vector<Int>> divisors_;
  std::vector<Int> chosen_;
  std::vector<Int> best_;
  std::size_t best_size_ = 0;
  std::size_t target_ = 0;
  std::vector<Shelf> found_;
  std::uint64_t nodes_ = 0;
};

} // namespace detail

/// Exact cn_k(n) with the first maximum met in the given search order as witness.
inline OracleResult max_shelf_bruteforce(Int n, Int k, const OracleConfig& config = {},
                                         SearchOrder order = SearchOrder::Ascending) {
  if (n == 0 || k == 0)
    throw InvalidInput("oracle requires n >= 1 and k >= 1");
  if (n > config.max_n)
    throw OracleScaleExceeded(n, config.max_n);
  detail::ShelfSearch search(n, k, order);
  return search.maximize();
}

/// Every maximum (n, k)-shelf, in the order the ascending search meets them.
inline std::vector<Shelf> enumerate_max_shelves(Int n, Int k, const OracleConfig& config = {}) {
  if (n == 0 || k == 0)
    throw InvalidInput("oracle requires n >= 1 and k >= 1");
  if (n > config.enumerate_max_n)
    throw OracleScaleExceeded(n, config.enumerate_max_n);
  OracleConfig relaxed = config;
  relaxed.max_n = std::max(config.max_n, n);
  const auto cn = max_shelf_bruteforce(n, k, relaxed).cn;
  detail::ShelfSearch search(n, k, SearchOrder::Ascending);
  return search.enumerate(cn);
}

/// Upgrades a validity-only certificate to oracle-exact when n is within the cap
/// and the sizes agree; otherwise attaches the oracle value so the gap is visible.
inline void attach_oracle(Construction& c, const OracleConfig& config) {
  if (c.shelf.n() > config.max_n)
    return;
  const auto cn = max_shelf_bruteforce(c.shelf.n(), c.shelf.k(), config).cn;
  c.certificate.oracle_size = cn;
  if (c.certificate.kind == CertificateKind::ValidityOnly && cn == c.shelf.size())
    c.certificate.kind = CertificateKind::OracleExact;
}

} // namespace coprime
