#pragma once

#include <string>
#include <string_view>

#include "rank1/numeric.hpp"

namespace rank1 {

/// Catalog of slowly growing functions used in decay certificates.
/// `Sqrt` is a test stub: it satisfies every threshold trivially.
enum class SlowFunction { LnLn, Ln, Sqrt };

std::string_view to_string(SlowFunction psi);
SlowFunction parse_slow_function(std::string_view name);

/// Outcome of a comparison evaluated with directed rounding.
enum class Certainty { Yes, No, Unknown };

/// Outward-rounded double enclosure, for reports only.
struct Enclosure {
  double lo;
  double hi;
};

/// Enclosure of psi(m); m >= 2.
Enclosure psi_enclosure(SlowFunction psi, const BigInt& m);

/// Enclosure of sqrt(h).
Enclosure sqrt_enclosure(const BigInt& h);

/// Certified psi(m) >= sqrt(h).
Certainty psi_dominates_sqrt(SlowFunction psi, const BigInt& m, const BigInt& h);

/// Certified value <= C * psi(m) / sqrt(m), with C > 0 and m >= 2.
Certainty below_decay_rate(const Rational& value, const Rational& C, SlowFunction psi,
                           const BigInt& m);

/// Certified psi(upper)/sqrt(upper) <= psi(m)/sqrt(m) for 2 <= m <= upper.
Certainty rate_not_increasing(SlowFunction psi, const BigInt& m, const BigInt& upper);

/// A dyadic rational r with r >= value * sqrt(m) / psi(m). Requires psi(m) > 0.
/// Used to fix a decay constant from observed correlations.
Rational decay_constant_upper(const Rational& value, SlowFunction psi, const BigInt& m);

/// A dyadic rational r with r >= sqrt(x), x >= 0.
Rational sqrt_upper(const Rational& x);

/// A dyadic rational r with r <= C * psi(m) / sqrt(m).
Rational decay_rate_lower(const Rational& C, SlowFunction psi, const BigInt& m);

}  // namespace rank1
