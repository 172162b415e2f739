#include <gtest/gtest.h>

#include <random>

#include "coprime/primes.hpp"
#include "support.hpp"

using namespace coprime;
using coprime::testing::naive_factor;
using coprime::testing::naive_is_prime;

namespace {

std::vector<Int> to_vec(std::span<const Int> s) { return {s.begin(), s.end()}; }

TEST(Sieve, SmallTables) {
  EXPECT_TRUE(sieve(1).primes().empty());
  EXPECT_EQ(to_vec(sieve(10).primes()), (std::vector<Int>{2, 3, 5, 7}));
  EXPECT_EQ(sieve(30).pi(30), 10u);
  EXPECT_THROW(sieve(0), InvalidInput);
}

TEST(Sieve, AgreesWithTrialDivision) {
  const PrimeTable t(5000);
  Int count = 0;
  for (Int m = 0; m <= 5000; ++m) {
    ASSERT_EQ(t.is_prime(m), naive_is_prime(m)) << m;
    count += naive_is_prime(m);
    ASSERT_EQ(t.pi(m), count) << m;
  }
  EXPECT_THROW(t.pi(5001), TableTooSmall);
}

TEST(PrimesIn, HalfOpenIntervals) {
  const PrimeTable t(100);
  EXPECT_EQ(to_vec(t.primes_in(1, 6)), (std::vector<Int>{2, 3, 5}));
  EXPECT_TRUE(t.primes_in(3, 3).empty());
  EXPECT_EQ(to_vec(t.primes_in(10, 34)), (std::vector<Int>{11, 13, 17, 19, 23, 29, 31}));
  EXPECT_THROW(t.primes_in(1, 101), TableTooSmall);
}

TEST(PrimesIn, SplitsAtAnyMidpoint) {
  const PrimeTable t(2000);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Int> pick(0, 2000);
  for (int trial = 0; trial < 2000; ++trial) {
    Int v[3] = {pick(rng), pick(rng), pick(rng)};
    std::sort(v, v + 3);
    auto joined = to_vec(t.primes_in(v[0], v[1]));
    const auto tail = to_vec(t.primes_in(v[1], v[2]));
    joined.insert(joined.end(), tail.begin(), tail.end());
    ASSERT_EQ(joined, to_vec(t.primes_in(v[0], v[2])));
  }
}

TEST(IntegerRoots, Examples) {
  EXPECT_EQ(iroot(1202, 2), 34u);
  EXPECT_EQ(iroot(1202, 3), 10u);
  for (unsigned j = 1; j < 70; ++j)
    EXPECT_EQ(iroot(1, j), 1u);
  EXPECT_EQ(iroot(~Int{0}, 2), 4294967295u);
  EXPECT_EQ(iroot(~Int{0}, 64), 1u);
  EXPECT_THROW(iroot(0, 2), InvalidInput);
}

TEST(IntegerRoots, ExhaustiveBracketing) {
  for (Int n = 1; n <= 10000; ++n)
    for (unsigned j : {2u, 3u}) {
      const Int r = iroot(n, j);
      ASSERT_LE(ipow(r, j), n);
      ASSERT_GT(ipow(r + 1, j), n);
    }
}

TEST(IntegerRoots, TwoThirdsPower) {
  EXPECT_EQ(two_thirds_floor(1000), 100u);
  EXPECT_EQ(two_thirds_floor(100), 21u);
  for (Int n = 1; n <= 3000; ++n) {
    const Int r = two_thirds_floor(n);
    ASSERT_LE(r * r * r, n * n);
    ASSERT_GT((r + 1) * (r + 1) * (r + 1), n * n);
  }
}

TEST(IntegerRoots, MiddleBandMembership) {
  const PrimeTable t(10000);
  for (Int n = 1; n <= 10000; n += 7) {
    const auto band = middle_primes(t, n);
    for (Int p : t.primes()) {
      const bool in_band = std::binary_search(band.begin(), band.end(), p);
      ASSERT_EQ(in_band, p * p <= n && p * p * p > n) << p << " " << n;
      ASSERT_EQ(in_band, is_middle_prime(p, n));
    }
  }
}

TEST(MaxExponent, Examples) {
  EXPECT_EQ(max_exponent(2, 6), 2u);
  EXPECT_EQ(max_exponent(7, 6), 0u);
  EXPECT_EQ(max_exponent(3, 27), 3u);
  EXPECT_EQ(max_exponent(2, ~Int{0}), 63u);
  EXPECT_THROW(max_exponent(1, 10), InvalidInput);
}

TEST(CheckedArithmetic, DetectsOverflow) {
  EXPECT_THROW(checked_mul(Int{1} << 32, Int{1} << 32), Overflow);
  EXPECT_THROW(ipow(10, 20), Overflow);
  EXPECT_FALSE(pow_leq(Int{1} << 32, 2, ~Int{0}));
  EXPECT_TRUE(pow_leq(4294967295u, 2, ~Int{0}));
}

TEST(Factorize, Examples) {
  const PrimeTable t(2000);
  const auto f12 = t.factorize(12);
  EXPECT_EQ(std::vector<PrimePower>(f12.pairs().begin(), f12.pairs().end()),
            (std::vector<PrimePower>{{2, 2}, {3, 1}}));
  EXPECT_EQ(f12.omega(), 2u);
  EXPECT_EQ(t.factorize(97).omega(), 1u);
  const auto f = t.factorize(1147);
  EXPECT_EQ(std::vector<PrimePower>(f.pairs().begin(), f.pairs().end()),
            (std::vector<PrimePower>{{31, 1}, {37, 1}}));
  EXPECT_EQ(f.exponent_of(37), 1u);
  EXPECT_EQ(f.exponent_of(2), 0u);
  EXPECT_THROW(t.factorize(1), InvalidInput);
}

TEST(Factorize, RoundTripUpTo100k) {
  const PrimeTable t(100000);
  for (Int a = 2; a <= 100000; ++a) {
    const auto f = t.factorize(a);
    ASSERT_EQ(f.value(), a);
    Int prev = 0;
    for (const auto& [p, e] : f.pairs()) {
      ASSERT_GT(p, prev);
      ASSERT_GE(e, 1u);
      prev = p;
    }
  }
}

TEST(Factorize, BeyondTableLimitByTrialDivision) {
  const PrimeTable t(100);
  const auto f = t.factorize(97 * 89);
  EXPECT_EQ(f.omega(), 2u);
  EXPECT_EQ(f.value(), 97u * 89u);
  for (Int a : {Int{9973}, Int{2} * 4999, Int{1024} * 81}) {
    std::vector<std::pair<Int, unsigned>> got;
    const auto fa = t.factorize(a);
    for (const auto& [p, e] : fa.pairs())
      got.push_back({p, e});
    EXPECT_EQ(got, naive_factor(a));
  }
  // 10007 * 10009: cofactor cannot be certified prime with primes <= 100.
  EXPECT_THROW(t.factorize(Int{10007} * 10009), TableTooSmall);
}

TEST(SecondSmallestPrime, Examples) {
  const PrimeTable t(2000);
  EXPECT_EQ(t.ssp(6), Int{3});
  EXPECT_FALSE(t.ssp(8).has_value());
  EXPECT_EQ(t.ssp(1147), Int{37});
  EXPECT_EQ(t.ssp(2 * 3 * 5 * 7), Int{3});
}

} // namespace
