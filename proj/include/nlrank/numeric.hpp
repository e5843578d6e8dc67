#pragma once

#include <cstdint>
#include <limits>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "nlrank/error.hpp"

namespace nlrank {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Floor division for a positive divisor.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Least nonnegative residue for a positive modulus.
template <typename Int>
Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline BigInt floor(const Rational& r) { return floor_div(num(r), den(r)); }

/// Fractional part in [0, 1).
inline Rational frac(const Rational& r) { return r - Rational(floor(r)); }

/// Representative of r modulo m in [0, m), m > 0.
inline Rational reduce_mod(const Rational& r, const Rational& m) {
  return r - m * Rational(floor(r / m));
}

inline bool is_integer(const Rational& r) { return den(r) == 1; }

inline std::string to_string(const BigInt& x) { return x.str(); }

/// "num/den", or just "num" for integers when `compact` is set.
inline std::string to_string(const Rational& r, bool compact = false) {
  if (compact && den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

inline std::int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::TooLarge, "integer does not fit in 64 bits: " + x.str());
  }
  return static_cast<std::int64_t>(x);
}

/// Parses "a", "a/b" or "-a/b".
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt n(text.substr(0, slash));
    BigInt d(text.substr(slash + 1));
    if (d == 0) throw Error(ErrorCode::BadFormat, "zero denominator in '" + text + "'");
    return Rational(n, d);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(ErrorCode::BadFormat, "not a rational: '" + text + "'");
  }
}

}  // namespace nlrank
