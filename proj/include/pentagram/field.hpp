#pragma once
// Scalar fields used throughout: exact arbitrary-precision rationals and
// IEEE double. Everything downstream is templated on the field type.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pentagram {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(double x) { return x; }

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& r) { return r; }
  static Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }
};

template <>
struct FieldTraits<double> {
  static constexpr bool exact = false;
  static double from_rational(const Rational& r) { return to_double(r); }
  static double abs(double a) { return std::fabs(a); }
};

// Canonical wire format for rationals: "p" or "p/q" with q > 0, reduced.
inline std::string rational_str(const Rational& r) {
  std::string s = numerator(r).template convert_to<std::string>();
  if (denominator(r) != 1) s += "/" + denominator(r).template convert_to<std::string>();
  return s;
}

inline Rational parse_rational(const std::string& s) { return Rational(s); }

inline Rational rational_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  Rational b = e > 0 ? base : Rational(1) / base;
  unsigned long k = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
  Rational acc(1);
  while (k) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

// log2 of a positive rational, computed from integer bit lengths plus a
// 53-bit mantissa so that huge numerators never pass through a double.
inline double log2_rational(const Rational& r) {
  if (r <= 0) throw std::domain_error("log2_rational requires a positive value");
  auto lg = [](const BigInt& n) -> double {
    unsigned b = msb(n);  // floor(log2(n)) for n > 0
    if (b <= 900) return std::log2(n.template convert_to<double>());
    BigInt top = n >> (b - 52);
    return double(b - 52) + std::log2(top.template convert_to<double>());
  };
  return lg(numerator(r)) - lg(denominator(r));
}

}  // namespace pentagram
