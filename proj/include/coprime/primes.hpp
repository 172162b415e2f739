#pragma once

/**
 * Exact integer number theory for the shelf constructions.
 *
 * Every interval bound of the form cube root, square root or two-thirds
 * power is decided by comparing integer powers; nothing here touches
 * floating point. Interval queries follow the half-open convention
 * P(x, y] = { p prime : x < p <= y }.
 */

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"

namespace coprime {

using Int = std::uint64_t;

// -----------------------------------------------------------------------------
// Overflow-checked arithmetic
// -----------------------------------------------------------------------------

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Overflow("multiplication overflows 64 bits");
  return r;
}

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw Overflow("addition overflows 64 bits");
  return r;
}

/// base^exp <= bound, decided without ever forming a product above bound.
inline bool pow_leq(Int base, unsigned exp, Int bound) {
  Int acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && acc > bound / base)
      return false;
    acc *= base;
  }
  return acc <= bound;
}

/// base^exp, throwing Overflow instead of wrapping.
inline Int ipow(Int base, unsigned exp) {
  Int acc = 1;
  for (unsigned i = 0; i < exp; ++i)
    acc = checked_mul(acc, base);
  return acc;
}

/// Largest r with r^j <= n.
inline Int iroot(Int n, unsigned j) {
  if (n == 0 || j == 0)
    throw InvalidInput("iroot requires n >= 1 and j >= 1");
  if (j == 1)
    return n;
  Int lo = 1, hi = n;
  // r^j <= n < 2^64 bounds r by 2^(64/j) + 1.
  if (j < 64)
    hi = std::min<Int>(n, (Int{1} << (64 / j)) + 1);
  else
    hi = std::min<Int>(n, 2);
  while (lo < hi) {
    Int mid = lo + (hi - lo + 1) / 2;
    if (pow_leq(mid, j, n))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

/// Largest r with r^3 <= n^2, i.e. floor(n^(2/3)).
inline Int two_thirds_floor(Int n) {
  if (n == 0)
    return 0;
  using U = unsigned __int128;
  const U sq = U(n) * U(n);
  Int lo = 1, hi = std::min<Int>(n, Int{1} << 43);
  while (lo < hi) {
    Int mid = lo + (hi - lo + 1) / 2;
    if (U(mid) * U(mid) * U(mid) <= sq)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

/// Largest e >= 0 with p^e <= n.
inline unsigned max_exponent(Int p, Int n) {
  if (p < 2)
    throw InvalidInput("max_exponent requires p >= 2");
  unsigned e = 0;
  Int acc = 1;
  while (acc <= n / p) {
    acc *= p;
    ++e;
  }
  return e;
}

// -----------------------------------------------------------------------------
// Factorization
// -----------------------------------------------------------------------------

struct PrimePower {
  Int prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with strictly ascending primes and positive exponents.
class Factorization {
public:
  Factorization() = default;
  explicit Factorization(std::vector<PrimePower> pairs) : pairs_(std::move(pairs)) {}

  std::span<const PrimePower> pairs() const { return pairs_; }

  /// Number of distinct prime divisors.
  std::size_t omega() const { return pairs_.size(); }

  unsigned exponent_of(Int p) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p,
                               [](const PrimePower& pp, Int q) { return pp.prime < q; });
    return it != pairs_.end() && it->prime == p ? it->exponent : 0;
  }

  Int value() const {
    Int v = 1;
    for (const auto& [p, e] : pairs_)
      v = checked_mul(v, ipow(p, e));
    return v;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;

private:
  std::vector<PrimePower> pairs_;
};

// -----------------------------------------------------------------------------
// Prime table
// -----------------------------------------------------------------------------

/// Sieve-backed prime store over [2, limit]. Immutable after construction.
class PrimeTable {
public:
  explicit PrimeTable(Int limit) : limit_(limit) {
    if (limit == 0)
      throw InvalidInput("sieve limit must be >= 1");
    if (limit > std::numeric_limits<std::uint32_t>::max())
      throw InvalidInput("sieve limit too large");
    spf_.assign(limit + 1, 0);
    pi_.assign(limit + 1, 0);
    for (Int i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = static_cast<std::uint32_t>(i);
        primes_.push_back(i);
      }
      for (Int p : primes_) {
        if (p > spf_[i] || p * i > limit)
          break;
        spf_[p * i] = static_cast<std::uint32_t>(p);
      }
    }
    std::uint32_t count = 0;
    for (Int m = 0; m <= limit; ++m) {
      if (m >= 2 && spf_[m] == m)
        ++count;
      pi_[m] = count;
    }
  }

  Int limit() const { return limit_; }
  std::span<const Int> primes() const { return primes_; }

  bool is_prime(Int m) const {
    require(m);
    return m >= 2 && spf_[m] == m;
  }

  /// pi(m): number of primes <= m.
  Int pi(Int m) const {
    require(m);
    return pi_[m];
  }

  /// Primes p with lo_excl < p <= hi_incl, ascending.
  std::span<const Int> primes_in(Int lo_excl, Int hi_incl) const {
    require(hi_incl);
    if (hi_incl <= lo_excl)
      return {};
    const Int lo = std::min(lo_excl, limit_);
    const auto first = primes_.begin() + static_cast<std::ptrdiff_t>(pi_[lo]);
    const auto last = primes_.begin() + static_cast<std::ptrdiff_t>(pi_[hi_incl]);
    return {first, last};
  }

  /// Trial division for values above the limit; smallest-factor lookup below.
  Factorization factorize(Int a) const {
    if (a < 2)
      throw InvalidInput("factorize requires a >= 2");
    std::vector<PrimePower> out;
    if (a <= limit_) {
      while (a > 1) {
        const Int p = spf_[a];
        unsigned e = 0;
        while (a % p == 0) {
          a /= p;
          ++e;
        }
        out.push_back({p, e});
      }
      return Factorization(std::move(out));
    }
    for (Int p : primes_) {
      if (p > a / p)
        break;
      if (a % p != 0)
        continue;
      unsigned e = 0;
      while (a % p == 0) {
        a /= p;
        ++e;
      }
      out.push_back({p, e});
    }
    if (a > 1) {
      // The cofactor is prime only if the table reaches its square root.
      if (limit_ < iroot(a, 2))
        throw TableTooSmall(iroot(a, 2), limit_);
      out.push_back({a, 1});
    }
    return Factorization(std::move(out));
  }

  /// Distinct prime divisors of a, ascending; empty for a = 1.
  std::vector<Int> prime_divisors(Int a) const {
    std::vector<Int> out;
    if (a < 2)
      return out;
    if (a <= limit_) {
      while (a > 1) {
        const Int p = spf_[a];
        out.push_back(p);
        while (a % p == 0)
          a /= p;
      }
      return out;
    }
    const auto f = factorize(a);
    for (const auto& pp : f.pairs())
      out.push_back(pp.prime);
    return out;
  }

  std::size_t omega(Int a) const { return prime_divisors(a).size(); }

  unsigned exponent_of(Int a, Int p) const {
    if (a < 2)
      return 0;
    return factorize(a).exponent_of(p);
  }

  /// Second smallest distinct prime divisor; absent when omega(a) <= 1.
  std::optional<Int> ssp(Int a) const {
    if (a < 2)
      throw InvalidInput("ssp requires a >= 2");
    const auto divisors = prime_divisors(a);
    if (divisors.size() < 2)
      return std::nullopt;
    return divisors[1];
  }

private:
  void require(Int m) const {
    if (m > limit_)
      throw TableTooSmall(m, limit_);
  }

  Int limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> pi_;
  std::vector<Int> primes_;
};

inline PrimeTable sieve(Int limit) { return PrimeTable(limit); }

// -----------------------------------------------------------------------------
// The three prime bands around n
// -----------------------------------------------------------------------------

/// P(1, cbrt n]: primes whose cube still fits.
inline std::span<const Int> small_primes(const PrimeTable& table, Int n) {
  return table.primes_in(1, iroot(n, 3));
}

/// P(cbrt n, sqrt n]: p^2 <= n < p^3.
inline std::span<const Int> middle_primes(const PrimeTable& table, Int n) {
  return table.primes_in(iroot(n, 3), iroot(n, 2));
}

/// P(sqrt n, n]: q^2 > n.
inline std::span<const Int> large_primes(const PrimeTable& table, Int n) {
  return table.primes_in(iroot(n, 2), n);
}

inline bool is_middle_prime(Int p, Int n) { return pow_leq(p, 2, n) && !pow_leq(p, 3, n); }

} // namespace coprime
