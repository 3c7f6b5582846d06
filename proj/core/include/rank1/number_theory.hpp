#pragma once

#include <cstdint>
#include <vector>

#include "rank1/numeric.hpp"

namespace rank1 {

/// Largest modulus accepted by the primitive-root search.
inline constexpr std::uint64_t kMaxPrimeModulus = std::uint64_t{1} << 31;

/// Raised when a modulus that must be prime is composite. Carries a
/// nontrivial factor as the witness.
class NotPrime : public InvalidArgument {
 public:
  NotPrime(std::uint64_t n, std::uint64_t factor);
  std::uint64_t value() const { return n_; }
  std::uint64_t factor() const { return factor_; }

 private:
  std::uint64_t n_;
  std::uint64_t factor_;
};

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

/// Smallest prime factor of n (n itself when prime), n >= 2.
std::uint64_t smallest_factor(std::uint64_t n);

bool is_prime(std::uint64_t n);

/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

/// Distinct prime factors in increasing order.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

/// True iff q generates the multiplicative group mod the prime p.
bool is_primitive_root(std::uint64_t q, std::uint64_t p);

/// Smallest generator of (Z/pZ)^*, found by checking q^((p-1)/f) != 1 for
/// each prime f | p-1. Requires 3 <= p <= 2^31 and p prime.
std::uint64_t find_primitive_root(std::uint64_t p);

}  // namespace rank1
