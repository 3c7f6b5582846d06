#include "rank1/numeric.hpp"

#include <cctype>

namespace rank1 {

CapExceeded::CapExceeded(const BigInt& requested, std::uint64_t cap)
    : Error("position cap exceeded: expansion needs " + to_string(requested) +
            " positions, cap is " + std::to_string(cap)),
      requested_(requested),
      cap_(cap) {}

std::string to_string(const BigInt& value) { return value.str(); }

std::string to_string(const Rational& value) {
  return to_string(BigInt(numerator(value))) + "/" +
         to_string(BigInt(denominator(value)));
}

BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty integer literal");
  std::size_t pos = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (pos == text.size()) throw InvalidArgument("malformed integer '" + std::string(text) + "'");
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw InvalidArgument("malformed integer '" + std::string(text) + "'");
  }
  // explicit base 10: GMP's default base detection reads a leading 0 as octal
  const std::string digits(text.substr(pos));
  BigInt out;
  mpz_set_str(out.backend().data(), digits.c_str(), 10);
  return text[0] == '-' ? BigInt(-out) : out;
}

namespace {

Rational parse_decimal(std::string_view text) {
  std::string mantissa(text);
  long exponent = 0;
  if (auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
    exponent = std::stol(mantissa.substr(e + 1));
    mantissa.resize(e);
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  std::string digits;
  for (char c : mantissa) {
    if (c == '.') {
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    digits.push_back(c);
  }
  if (digits.empty()) throw InvalidArgument("malformed rational '" + std::string(text) + "'");
  if (auto dot = mantissa.find('.'); dot != std::string::npos)
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
  Rational value{parse_bigint(digits)};
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  value = exponent < 0 ? value / Rational(scale) : value * Rational(scale);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_bigint(text.substr(0, slash));
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  return Rational(parse_bigint(text));
}

Rational default_tolerance() { return Rational(BigInt(1), BigInt(1000000000)); }

}  // namespace rank1
