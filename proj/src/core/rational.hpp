#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>

namespace seqoc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// base^e with exact rational arithmetic; e may be negative (base must be nonzero then).
Rational rat_pow(const Rational& base, std::int64_t e);

// Exact value of an IEEE double (every finite double is a dyadic rational).
// Throws std::invalid_argument for NaN or infinity.
Rational rational_from_double(double x);

double rational_to_double(const Rational& r);

// Parses "a/b" (integers, optional sign, b > 0 after normalization) or a plain
// integer "a". Returns nullopt when the text is not of that form; throws
// std::invalid_argument on a zero denominator.
std::optional<Rational> parse_fraction(const std::string& text);

// A numeric literal parsed from text: the double value plus, for finite
// inputs, the exact rational the text denotes (decimals are exact powers of
// ten, not dyadic roundings).
struct ParsedNumber {
  double value = 0;
  std::optional<Rational> exact;
};

// Accepts fractions ("3/7"), integers, decimals with optional exponent
// ("0.375", "2.5e-3"), and optionally signed "inf"/"infinity" (exact is empty
// for infinities).  Returns nullopt when the text is none of those.
std::optional<ParsedNumber> parse_number(const std::string& text);

// Decimal rendering with enough digits to round-trip a double.
std::string format_double(double x);

// "a/b" (or "a" when the denominator is 1).
std::string format_rational(const Rational& r);

}  // namespace seqoc
