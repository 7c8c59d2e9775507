#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace retset {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp) b *= b;
  }
  return result;
}

inline Rational rat_pow(const Rational& base, std::uint64_t exp) {
  return Rational(big_pow(boost::multiprecision::numerator(base), exp),
                  big_pow(boost::multiprecision::denominator(base), exp));
}

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const Rational& x) {
  if (boost::multiprecision::denominator(x) == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}

/// Parses "a" or "a/b" with optional sign.
Rational parse_rational(const std::string& text);

inline bool is_integer(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += (m < 0 ? -m : m);
  return r;
}

}  // namespace retset
