#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "error.hpp"
#include "primes.hpp"
#include "shelf.hpp"

namespace coprime {

/// Sort key of the shift order: omega first, then the exponent at the smallest
/// prime where two factorizations disagree, smaller exponent first.
struct ShiftKey {
  std::size_t omega = 0;
  std::vector<PrimePower> exponents;

  friend bool operator==(const ShiftKey&, const ShiftKey&) = default;
};

inline ShiftKey shift_key(Int a, const PrimeTable& table) {
  if (a < 2)
    throw InvalidInput("shift order is defined on integers > 1");
  auto f = table.factorize(a);
  return {f.omega(), std::vector<PrimePower>(f.pairs().begin(), f.pairs().end())};
}

inline bool key_less(const ShiftKey& a, const ShiftKey& b) {
  if (a.omega != b.omega)
    return a.omega < b.omega;
  auto ia = a.exponents.begin(), ib = b.exponents.begin();
  while (ia != a.exponents.end() || ib != b.exponents.end()) {
    // A prime missing from one side has exponent 0 there.
    const Int pa = ia != a.exponents.end() ? ia->prime : ~Int{0};
    const Int pb = ib != b.exponents.end() ? ib->prime : ~Int{0};
    const Int q = std::min(pa, pb);
    const unsigned ea = pa == q ? ia->exponent : 0;
    const unsigned eb = pb == q ? ib->exponent : 0;
    if (ea != eb)
      return ea < eb;
    if (pa == q)
      ++ia;
    if (pb == q)
      ++ib;
  }
  return false;
}

/// a ≺ b. The order is strict, so a == b is rejected.
inline bool prec(Int a, Int b, const PrimeTable& table) {
  if (a == b)
    throw InvalidInput("prec is a strict order: a == b");
  return key_less(shift_key(a, table), shift_key(b, table));
}

/// Ranks of 2..limit under ≺, precomputed once so that comparisons are O(1).
class ShiftOrder {
public:
  explicit ShiftOrder(const PrimeTable& table) : limit_(table.limit()) {
    std::vector<ShiftKey> keys(limit_ + 1);
    for (Int a = 2; a <= limit_; ++a)
      keys[a] = shift_key(a, table);
    order_.resize(limit_ >= 2 ? limit_ - 1 : 0);
    std::iota(order_.begin(), order_.end(), Int{2});
    std::sort(order_.begin(), order_.end(), [&](Int a, Int b) { return key_less(keys[a], keys[b]); });
    rank_.assign(limit_ + 1, 0);
    for (std::size_t r = 0; r < order_.size(); ++r)
      rank_[order_[r]] = r;
  }

  Int limit() const { return limit_; }

  std::size_t rank(Int a) const {
    if (a < 2 || a > limit_)
      throw TableTooSmall(a, limit_);
    return rank_[a];
  }

  bool less(Int a, Int b) const { return rank(a) < rank(b); }

  /// 2..limit sorted by ≺.
  std::span<const Int> ascending() const { return order_; }

private:
  Int limit_;
  std::vector<Int> order_;
  std::vector<std::size_t> rank_;
};

/// One stage of the shifting operation.
struct ShiftStage {
  Int prime;
  Int occupancy;     ///< o_p(A_{i-1})
  unsigned log_floor; ///< floor(log_p n)
  unsigned e;         ///< min(occupancy, log_floor)
};

struct ShiftResult {
  Shelf shelf;
  std::vector<ShiftStage> stages;
};

namespace detail {

template <class Less>
ShiftResult shift_impl(const Shelf& a, const PrimeTable& table, Less&& less) {
  const Int n = a.n();
  std::vector<char> member(n + 1, 0);
  for (Int x : a.elements())
    member[x] = 1;
  ShiftResult out{a, {}};
  std::vector<Int> multiples;
  for (Int p : table.primes_in(1, n)) {
    multiples.clear();
    for (Int m = p; m <= n; m += p)
      if (member[m])
        multiples.push_back(m);
    const unsigned L = max_exponent(p, n);
    const unsigned e = static_cast<unsigned>(std::min<Int>(multiples.size(), L));
    out.stages.push_back({p, multiples.size(), L, e});
    if (e == 0)
      continue;
    std::partial_sort(multiples.begin(), multiples.begin() + e, multiples.end(), less);
    for (unsigned t = 0; t < e; ++t)
      member[multiples[t]] = 0;
    Int power = 1;
    for (unsigned t = 0; t < e; ++t) {
      power *= p;
      member[power] = 1;
    }
  }
  std::vector<Int> elements;
  elements.reserve(a.size());
  for (Int x = 1; x <= n; ++x)
    if (member[x])
      elements.push_back(x);
  out.shelf = Shelf(n, a.k(), std::move(elements));
  return out;
}

} // namespace detail

/// The shifting operation: for each prime p ascending, replace the e
/// ≺-smallest multiples of p by p, p^2, ..., p^e where
/// e = min(o_p, floor(log_p n)). Preserves size and validity.
inline ShiftResult shift_traced(const Shelf& a, const PrimeTable& table) {
  if (!is_shelf(a, table))
    throw InvalidInput("shift requires a valid shelf");
  return detail::shift_impl(a, table, [&](Int x, Int y) {
    return key_less(shift_key(x, table), shift_key(y, table));
  });
}

inline ShiftResult shift_traced(const Shelf& a, const PrimeTable& table, const ShiftOrder& order) {
  if (!is_shelf(a, table))
    throw InvalidInput("shift requires a valid shelf");
  return detail::shift_impl(a, table, [&](Int x, Int y) { return order.less(x, y); });
}

inline Shelf shift(const Shelf& a, const PrimeTable& table) { return shift_traced(a, table).shelf; }

inline Shelf shift(const Shelf& a) { return shift(a, PrimeTable(a.n())); }

/// For k = 3: every element is 1, a prime power, or p*q with p in P(cbrt n, sqrt n]
/// and q in P(cbrt n, n].
inline bool shift_structure_check(const Shelf& a, const PrimeTable& table) {
  if (a.k() != 3)
    throw InvalidInput("shift_structure_check is defined for k = 3");
  const Int n = a.n();
  const Int cbrt = iroot(n, 3), sqrt = iroot(n, 2);
  for (Int x : a.elements()) {
    if (x == 1)
      continue;
    const auto f = table.factorize(x);
    if (f.omega() == 1)
      continue;
    if (f.omega() != 2 || f.pairs()[0].exponent != 1 || f.pairs()[1].exponent != 1)
      return false;
    const Int p1 = f.pairs()[0].prime, p2 = f.pairs()[1].prime;
    auto middle = [&](Int p) { return p > cbrt && p <= sqrt; };
    auto above_cbrt = [&](Int q) { return q > cbrt && q <= n; };
    if (!((middle(p1) && above_cbrt(p2)) || (middle(p2) && above_cbrt(p1))))
      return false;
  }
  return true;
}

} // namespace coprime
