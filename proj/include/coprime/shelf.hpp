#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "primes.hpp"

namespace coprime {

/// A candidate clique of CHI_k(n): a duplicate-free subset of [1, n] together with
/// the occupancy cap k. Elements are kept ascending. Validity (every prime divides
/// at most k elements) is checked by is_shelf, not assumed.
class Shelf {
public:
  Shelf(Int n, Int k, std::vector<Int> elements = {})
      : n_(n), k_(k), elements_(std::move(elements)) {
    if (n == 0 || k == 0)
      throw InvalidInput("shelf requires n >= 1 and k >= 1");
    std::sort(elements_.begin(), elements_.end());
    if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
      throw InvalidInput("shelf elements must be distinct");
    if (!elements_.empty() && (elements_.front() < 1 || elements_.back() > n))
      throw InvalidInput("shelf elements must lie in [1, n]");
  }

  Int n() const { return n_; }
  Int k() const { return k_; }
  std::span<const Int> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  bool contains(Int x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
  }

  friend bool operator==(const Shelf&, const Shelf&) = default;

private:
  Int n_;
  Int k_;
  std::vector<Int> elements_;
};

inline std::size_t shelf_size(const Shelf& shelf) { return shelf.size(); }

/// counts[p] = number of elements divisible by p; primes with count 0 are absent.
struct OccupancyMap {
  std::map<Int, Int> counts;

  Int operator[](Int p) const {
    auto it = counts.find(p);
    return it == counts.end() ? 0 : it->second;
  }

  /// Largest count and the smallest prime attaining it; (0, 0) when empty.
  std::pair<Int, Int> max() const {
    std::pair<Int, Int> best{0, 0};
    for (const auto& [p, c] : counts)
      if (c > best.second)
        best = {p, c};
    return best;
  }

  friend bool operator==(const OccupancyMap&, const OccupancyMap&) = default;
};

template <class Range>
OccupancyMap occupancy_of(const Range& values, const PrimeTable& table) {
  OccupancyMap out;
  for (Int a : values)
    for (Int p : table.prime_divisors(a))
      ++out.counts[p];
  return out;
}

inline OccupancyMap occupancy(const Shelf& shelf, const PrimeTable& table) {
  return occupancy_of(shelf.elements(), table);
}

inline OccupancyMap occupancy(const Shelf& shelf) {
  return occupancy(shelf, PrimeTable(shelf.n()));
}

/// Smallest prime whose occupancy exceeds k, if any.
inline std::optional<Int> first_violation(const Shelf& shelf, const PrimeTable& table) {
  for (const auto& [p, c] : occupancy(shelf, table).counts)
    if (c > shelf.k())
      return p;
  return std::nullopt;
}

inline bool is_shelf(const Shelf& shelf, const PrimeTable& table) {
  return !first_violation(shelf, table).has_value();
}

inline bool is_shelf(const Shelf& shelf) { return is_shelf(shelf, PrimeTable(shelf.n())); }

// -----------------------------------------------------------------------------
// Certificates
// -----------------------------------------------------------------------------

enum class CertificateKind { OracleExact, BergeMatching, ValidityOnly };

inline const char* to_string(CertificateKind kind) {
  switch (kind) {
  case CertificateKind::OracleExact:
    return "oracle-exact";
  case CertificateKind::BergeMatching:
    return "berge-matching";
  case CertificateKind::ValidityOnly:
    return "validity-only";
  }
  return "?";
}

inline std::optional<CertificateKind> certificate_kind_from_string(const std::string& s) {
  if (s == "oracle-exact")
    return CertificateKind::OracleExact;
  if (s == "berge-matching")
    return CertificateKind::BergeMatching;
  if (s == "validity-only")
    return CertificateKind::ValidityOnly;
  return std::nullopt;
}

/// What the k >= 4 pipeline achieved; it is a heuristic, so shortfalls are data.
struct HeuristicReport {
  std::size_t structured_size = 0; ///< |base ∪ X ∪ Y ∪ Z| before normalization
  std::size_t flow_value = 0;      ///< |Y|
  std::size_t z_size = 0;
  std::size_t z_shortfall = 0;     ///< floor(sum d_p / 2) - |Z|
  std::size_t x_size = 0;
  bool x_saturated = false;        ///< every small prime reached k products in X
  bool dwb_hypothesis = false;     ///< existence hypothesis with l = k
  std::size_t completion_added = 0;
};

struct Certificate {
  CertificateKind kind = CertificateKind::ValidityOnly;
  std::optional<std::size_t> oracle_size;
  std::optional<std::size_t> greedy_size;
  std::optional<std::size_t> reference_size;
  std::optional<HeuristicReport> heuristic;

  /// Kind-specific payload agrees with a shelf of the given size.
  bool consistent_with(std::size_t shelf_size) const {
    switch (kind) {
    case CertificateKind::OracleExact:
      return oracle_size && *oracle_size == shelf_size;
    case CertificateKind::BergeMatching:
      return greedy_size && reference_size && *greedy_size == *reference_size;
    case CertificateKind::ValidityOnly:
      return true;
    }
    return false;
  }

  /// oracle size minus shelf size, when an oracle value is attached.
  std::optional<std::size_t> gap(std::size_t shelf_size) const {
    if (!oracle_size)
      return std::nullopt;
    return *oracle_size >= shelf_size ? *oracle_size - shelf_size : 0;
  }
};

/// A constructed shelf and the evidence that came with it.
struct Construction {
  Shelf shelf;
  Certificate certificate;
};

} // namespace coprime
