#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/functional/hash.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "randfib/errors.hpp"

namespace randfib {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational abs_value(const Rational& v) { return v < 0 ? Rational(-v) : v; }
inline double abs_value(double v) { return std::fabs(v); }

inline double to_double(const Rational& v) { return v.convert_to<double>(); }
inline double to_double(double v) { return v; }

/// Divide by 2^level without building the power explicitly for doubles.
inline Rational div_pow2(const Rational& v, int level) {
  return v / Rational(BigInt(1) << level);
}
inline double div_pow2(double v, int level) { return std::ldexp(v, -level); }

inline std::size_t scalar_hash(const Rational& v) {
  return boost::hash<Rational>{}(v);
}
inline std::size_t scalar_hash(double v) {
  return std::hash<double>{}(v == 0.0 ? 0.0 : v);  // collapse -0.0
}

/// Parse "p/q", "123", or a plain decimal like "0.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw InvalidInputError("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      const BigInt num(s.substr(0, slash));
      const BigInt den(s.substr(slash + 1));
      if (den == 0) throw InvalidInputError("zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    const std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidInputError("malformed decimal '" + s + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const bool neg = !whole.empty() && whole[0] == '-';
    const std::string digits = (whole == "-" || whole.empty()) ? "0" : whole;
    BigInt num = BigInt(digits) * scale;
    num = neg ? num - BigInt(frac.empty() ? "0" : frac)
              : num + BigInt(frac.empty() ? "0" : frac);
    return Rational(num, scale);
  } catch (const std::runtime_error&) {
    throw InvalidInputError("malformed rational literal '" + s + "'");
  }
}

/// "p/q" with the denominator omitted when it is 1.
inline std::string format_scalar(const Rational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Shortest round-trip double formatting.
inline std::string format_scalar(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace randfib
