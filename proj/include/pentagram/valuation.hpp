#pragma once
// Valuation estimation: the leading exponent of f(u) as u -> 0, measured by
// comparing |f(u0)| against |f(ratio*u0)|. The integer part is bracketed by
// exact rational comparisons when the field is exact; only an O(1)-sized
// remainder ever reaches floating point.

#include <cmath>
#include <stdexcept>

#include "pentagram/field.hpp"

namespace pentagram {

struct ValuationResult {
  long exponent;
  double residual;  // distance of the log-ratio to the nearest integer
};

namespace detail {

inline ValuationResult valuation_from_ratio(const Rational& r, const Rational& base) {
  // integer part by exact sandwich: find k with base^k <= r < base^{k+1}
  long k = static_cast<long>(std::floor(log2_rational(r) / log2_rational(base)));
  while (rational_pow(base, k + 1) <= r) ++k;
  while (rational_pow(base, k) > r) --k;
  Rational scaled = r / rational_pow(base, k);  // in [1, base)
  double frac = std::log2(to_double(scaled)) / log2_rational(base);
  long rounded = frac >= 0.5 ? k + 1 : k;
  double residual = std::fabs((double(k) + frac) - double(rounded));
  return {rounded, residual};
}

inline ValuationResult valuation_from_ratio(double r, double base) {
  double t = std::log(r) / std::log(base);
  long rounded = std::lround(t);
  return {rounded, std::fabs(t - double(rounded))};
}

}  // namespace detail

// f maps a positive rational u to a field scalar. Returns
// round(log(|f(u0)| / |f(ratio*u0)|) / log(1/ratio)) plus the rounding
// residual; callers should treat the result as a valuation only when the
// residual stays below 0.1 under halving u0.
template <class Fn>
ValuationResult valuation_estimate(Fn&& f, const Rational& u0, const Rational& ratio) {
  if (!(u0 > 0)) throw std::invalid_argument("valuation_estimate requires u0 > 0");
  if (!(ratio > 0 && ratio < 1)) throw std::invalid_argument("valuation_estimate requires ratio in (0,1)");
  auto v0 = f(u0);
  auto v1 = f(Rational(ratio * u0));
  using F = decltype(v0);
  if (v0 == F(0) || v1 == F(0)) throw std::domain_error("valuation undefined at sample");
  if constexpr (FieldTraits<F>::exact) {
    Rational r = FieldTraits<F>::abs(v0) / FieldTraits<F>::abs(v1);
    Rational base = Rational(1) / ratio;
    return detail::valuation_from_ratio(r, base);
  } else {
    double r = std::fabs(to_double(v0)) / std::fabs(to_double(v1));
    return detail::valuation_from_ratio(r, 1.0 / to_double(ratio));
  }
}

template <class Fn>
ValuationResult valuation_estimate(Fn&& f, double u0, double ratio) {
  if (!(u0 > 0)) throw std::invalid_argument("valuation_estimate requires u0 > 0");
  if (!(ratio > 0 && ratio < 1)) throw std::invalid_argument("valuation_estimate requires ratio in (0,1)");
  double v0 = f(u0);
  double v1 = f(ratio * u0);
  if (v0 == 0.0 || v1 == 0.0) throw std::domain_error("valuation undefined at sample");
  return detail::valuation_from_ratio(std::fabs(v0) / std::fabs(v1), 1.0 / ratio);
}

}  // namespace pentagram
