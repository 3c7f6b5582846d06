#include "rank1/number_theory.hpp"

#include <string>

namespace rank1 {

NotPrime::NotPrime(std::uint64_t n, std::uint64_t factor)
    : InvalidArgument(std::to_string(n) + " is not prime (divisible by " +
                      std::to_string(factor) + ")"),
      n_(n),
      factor_(factor) {}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 result = 1 % mod;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1U) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1U;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t smallest_factor(std::uint64_t n) {
  if (n < 2) throw InvalidArgument("smallest_factor: n must be >= 2");
  if (n % 2 == 0) return 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return d;
  }
  return n;
}

bool is_prime(std::uint64_t n) { return n >= 2 && smallest_factor(n) == n; }

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  for (std::uint64_t c = n;; ++c) {
    if (is_prime(c)) return c;
  }
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> factors;
  while (n > 1) {
    std::uint64_t f = smallest_factor(n);
    factors.push_back(f);
    while (n % f == 0) n /= f;
  }
  return factors;
}

bool is_primitive_root(std::uint64_t q, std::uint64_t p) {
  if (q % p == 0) return false;
  for (std::uint64_t f : distinct_prime_factors(p - 1)) {
    if (pow_mod(q, (p - 1) / f, p) == 1) return false;
  }
  return true;
}

std::uint64_t find_primitive_root(std::uint64_t p) {
  if (p < 3) throw InvalidArgument("find_primitive_root: modulus must be >= 3");
  if (p > kMaxPrimeModulus) throw InvalidArgument("find_primitive_root: modulus exceeds 2^31");
  if (std::uint64_t f = smallest_factor(p); f != p) throw NotPrime(p, f);
  const auto factors = distinct_prime_factors(p - 1);
  for (std::uint64_t q = 2; q < p; ++q) {
    bool generator = true;
    for (std::uint64_t f : factors) {
      if (pow_mod(q, (p - 1) / f, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return q;
  }
  throw Error("no primitive root found for " + std::to_string(p));
}

}  // namespace rank1
