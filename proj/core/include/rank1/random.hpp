#pragma once

#include <cstdint>
#include <random>

#include "rank1/numeric.hpp"

namespace rank1 {

/// Seeded generator with platform-independent range reduction, so a seed
/// reproduces the same draws everywhere (std distributions do not promise that).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform in [0, n); n > 0.
  BigInt below(const BigInt& n) {
    const std::size_t bits = boost::multiprecision::msb(n) + 1;
    for (;;) {
      BigInt x = 0;
      for (std::size_t got = 0; got < bits; got += 64) {
        x <<= 64;
        x += engine_();
      }
      x >>= ((bits + 63) / 64) * 64 - bits;
      if (x < n) return x;
    }
  }

  /// Uniform in [lo, hi].
  BigInt between(const BigInt& lo, const BigInt& hi) { return lo + below(BigInt(hi - lo + 1)); }

  bool coin() { return engine_() >> 63; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rank1
