#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coprime {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Precondition on an argument failed (n = 0, a < 2, strict order asked for a == b, ...).
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// A query reached beyond the limit of the prime table it was given.
class TableTooSmall : public Error {
public:
  TableTooSmall(std::uint64_t requested, std::uint64_t limit)
      : Error("prime table too small: need " + std::to_string(requested) +
              ", limit is " + std::to_string(limit)),
        requested(requested), limit(limit) {}

  std::uint64_t requested;
  std::uint64_t limit;
};

class Overflow : public Error {
public:
  using Error::Error;
};

/// Exhaustive search asked for at a size above its configured cap.
class OracleScaleExceeded : public Error {
public:
  OracleScaleExceeded(std::uint64_t n, std::uint64_t cap)
      : Error("oracle scale exceeded: n = " + std::to_string(n) + " > cap " +
              std::to_string(cap)),
        n(n), cap(cap) {}

  std::uint64_t n;
  std::uint64_t cap;
};

/// Hypotheses of a bound are not met for the given arguments.
class Inapplicable : public Error {
public:
  using Error::Error;
};

/// An occupancy cap would be exceeded; carries the offending prime.
class OccupancyViolation : public Error {
public:
  OccupancyViolation(std::uint64_t prime, std::uint64_t count, std::uint64_t cap)
      : Error("occupancy violated at p = " + std::to_string(prime) + ": " +
              std::to_string(count) + " > " + std::to_string(cap)),
        prime(prime), count(count), cap(cap) {}

  std::uint64_t prime;
  std::uint64_t count;
  std::uint64_t cap;
};

/// A maximality certificate that is guaranteed by theory did not verify.
class CertificateFailure : public Error {
public:
  using Error::Error;
};

} // namespace coprime
