#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace rank1 {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on caller-supplied data was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An expansion would exceed the configured position cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const BigInt& requested, std::uint64_t cap);
  const BigInt& requested() const { return requested_; }
  std::uint64_t cap() const { return cap_; }

 private:
  BigInt requested_;
  std::uint64_t cap_;
};

/// Decimal form of a big integer.
std::string to_string(const BigInt& value);

/// "p/q" in lowest terms, always with an explicit denominator.
std::string to_string(const Rational& value);

BigInt parse_bigint(std::string_view text);

/// Accepts "p/q", a plain integer, or a decimal such as "1e-9" / "0.25"
/// (converted exactly).
Rational parse_rational(std::string_view text);

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

/// Default correlation tolerance, 10^-9.
Rational default_tolerance();

}  // namespace rank1
