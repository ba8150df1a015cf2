#include "core/rational.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <regex>
#include <stdexcept>

namespace seqoc {

Rational rat_pow(const Rational& base, std::int64_t e) {
  if (e == 0) return Rational(1);
  if (base == 0 && e < 0) throw std::invalid_argument("rat_pow: 0 to a negative power");
  const auto a = static_cast<unsigned long>(e < 0 ? -e : e);
  BigInt np = pow(numerator(base), a);
  BigInt dp = pow(denominator(base), a);
  return e > 0 ? Rational(np, dp) : Rational(dp, np);
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
  if (x == 0.0) return Rational(0);
  int exp2 = 0;
  double mant = std::frexp(x, &exp2);  // x = mant * 2^exp2, |mant| in [0.5, 1)
  // 53 doublings turn the mantissa into an exact integer.
  for (int i = 0; i < 53 && mant != std::floor(mant); ++i) {
    mant *= 2.0;
    --exp2;
  }
  Rational r(BigInt(static_cast<long long>(mant)));
  if (exp2 >= 0) {
    r *= rat_pow(Rational(2), exp2);
  } else {
    r /= rat_pow(Rational(2), -static_cast<std::int64_t>(exp2));
  }
  return r;
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

// BigInt's string constructor honors C-style base prefixes, so "09" would be
// read as bad octal; strip sign and leading zeros before converting.
BigInt integer_from_digits(const std::string& token) {
  std::size_t i = 0;
  bool negative = false;
  if (i < token.size() && (token[i] == '+' || token[i] == '-')) {
    negative = token[i] == '-';
    ++i;
  }
  while (i + 1 < token.size() && token[i] == '0') ++i;
  BigInt v(token.substr(i));
  return negative ? BigInt(-v) : v;
}

}  // namespace

std::optional<Rational> parse_fraction(const std::string& text) {
  static const std::regex kFraction(R"(^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$)");
  std::smatch m;
  if (!std::regex_match(text, m, kFraction)) return std::nullopt;
  BigInt num = integer_from_digits(m[1].str());
  if (!m[2].matched) return Rational(num);
  BigInt den = integer_from_digits(m[2].str());
  if (den == 0) throw std::invalid_argument("fraction with zero denominator: " + text);
  return Rational(num, den);
}

std::optional<ParsedNumber> parse_number(const std::string& text) {
  static const std::regex kInf(R"(^\s*([+-]?)(?:inf|infinity)\s*$)", std::regex::icase);
  std::smatch m;
  if (std::regex_match(text, m, kInf)) {
    const double inf = std::numeric_limits<double>::infinity();
    return ParsedNumber{m[1].str() == "-" ? -inf : inf, std::nullopt};
  }
  try {
    if (auto frac = parse_fraction(text)) {
      return ParsedNumber{rational_to_double(*frac), std::move(*frac)};
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;  // "1/0" is shaped like a number but denotes none
  }
  static const std::regex kDecimal(R"(^\s*([+-]?)(\d+(?:\.\d*)?|\.\d+)(?:[eE]([+-]?\d+))?\s*$)");
  if (!std::regex_match(text, m, kDecimal)) return std::nullopt;
  const std::string mantissa = m[2].str();
  const auto dot = mantissa.find('.');
  std::string digits = mantissa;
  std::int64_t scale = m[3].matched ? std::stoll(m[3].str()) : 0;
  if (dot != std::string::npos) {
    digits.erase(dot, 1);
    scale -= static_cast<std::int64_t>(mantissa.size() - dot - 1);
  }
  Rational exact = Rational(integer_from_digits(digits)) * rat_pow(Rational(10), scale);
  if (m[1].str() == "-") exact = -exact;
  return ParsedNumber{rational_to_double(exact), std::move(exact)};
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Prefer the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, x);
    if (std::strtod(shorter, nullptr) == x) return shorter;
  }
  return buf;
}

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace seqoc
