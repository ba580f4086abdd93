#pragma once
// First-order forward-mode jets: a value plus a fixed-length vector of
// partial derivatives. A jet with an empty partials vector is a constant;
// mixed arithmetic broadcasts it against seeded jets of any width.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "pentagram/field.hpp"

namespace pentagram {

template <class F>
struct Jet {
  F v{};
  std::vector<F> d;  // empty means constant

  Jet() = default;
  Jet(int k) : v(F(k)) {}
  explicit Jet(const F& value) : v(value) {}
  Jet(F value, std::vector<F> partials) : v(std::move(value)), d(std::move(partials)) {}

  static Jet seeded(const F& value, std::size_t i, std::size_t width) {
    std::vector<F> p(width, F(0));
    p[i] = F(1);
    return Jet(value, std::move(p));
  }

  std::size_t width() const { return d.size(); }
};

namespace detail {
template <class F>
void check_widths(const Jet<F>& a, const Jet<F>& b) {
  if (!a.d.empty() && !b.d.empty() && a.d.size() != b.d.size())
    throw std::invalid_argument("jet partial widths differ");
}
}  // namespace detail

template <class F>
Jet<F> operator+(const Jet<F>& a, const Jet<F>& b) {
  detail::check_widths(a, b);
  if (b.d.empty()) return Jet<F>(a.v + b.v, a.d);
  if (a.d.empty()) return Jet<F>(a.v + b.v, b.d);
  std::vector<F> p(a.d.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a.d[i] + b.d[i];
  return Jet<F>(a.v + b.v, std::move(p));
}

template <class F>
Jet<F> operator-(const Jet<F>& a) {
  std::vector<F> p(a.d.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = -a.d[i];
  return Jet<F>(-a.v, std::move(p));
}

template <class F>
Jet<F> operator-(const Jet<F>& a, const Jet<F>& b) {
  detail::check_widths(a, b);
  if (b.d.empty()) return Jet<F>(a.v - b.v, a.d);
  if (a.d.empty()) return -(b - a);
  std::vector<F> p(a.d.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a.d[i] - b.d[i];
  return Jet<F>(a.v - b.v, std::move(p));
}

template <class F>
Jet<F> operator*(const Jet<F>& a, const Jet<F>& b) {
  detail::check_widths(a, b);
  if (b.d.empty()) {
    std::vector<F> p(a.d.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = a.d[i] * b.v;
    return Jet<F>(a.v * b.v, std::move(p));
  }
  if (a.d.empty()) return b * a;
  std::vector<F> p(a.d.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a.d[i] * b.v + a.v * b.d[i];
  return Jet<F>(a.v * b.v, std::move(p));
}

template <class F>
Jet<F> operator/(const Jet<F>& a, const Jet<F>& b) {
  detail::check_widths(a, b);
  if (b.v == F(0)) throw std::domain_error("jet division by zero value");
  F w = a.v / b.v;
  if (b.d.empty()) {
    std::vector<F> p(a.d.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = a.d[i] / b.v;
    return Jet<F>(std::move(w), std::move(p));
  }
  std::size_t width = b.d.size();
  std::vector<F> p(width);
  for (std::size_t i = 0; i < width; ++i) {
    F da = a.d.empty() ? F(0) : a.d[i];
    p[i] = (da - w * b.d[i]) / b.v;
  }
  return Jet<F>(std::move(w), std::move(p));
}

template <class F> Jet<F> operator+(const Jet<F>& a, int k) { return a + Jet<F>(k); }
template <class F> Jet<F> operator+(int k, const Jet<F>& a) { return Jet<F>(k) + a; }
template <class F> Jet<F> operator-(const Jet<F>& a, int k) { return a - Jet<F>(k); }
template <class F> Jet<F> operator-(int k, const Jet<F>& a) { return Jet<F>(k) - a; }
template <class F> Jet<F> operator*(const Jet<F>& a, int k) { return a * Jet<F>(k); }
template <class F> Jet<F> operator*(int k, const Jet<F>& a) { return Jet<F>(k) * a; }
template <class F> Jet<F> operator/(const Jet<F>& a, int k) { return a / Jet<F>(k); }
template <class F> Jet<F> operator/(int k, const Jet<F>& a) { return Jet<F>(k) / a; }

template <class F> Jet<F> operator+(const Jet<F>& a, const F& s) { return a + Jet<F>(s); }
template <class F> Jet<F> operator+(const F& s, const Jet<F>& a) { return Jet<F>(s) + a; }
template <class F> Jet<F> operator-(const Jet<F>& a, const F& s) { return a - Jet<F>(s); }
template <class F> Jet<F> operator-(const F& s, const Jet<F>& a) { return Jet<F>(s) - a; }
template <class F> Jet<F> operator*(const Jet<F>& a, const F& s) { return a * Jet<F>(s); }
template <class F> Jet<F> operator*(const F& s, const Jet<F>& a) { return Jet<F>(s) * a; }
template <class F> Jet<F> operator/(const Jet<F>& a, const F& s) { return a / Jet<F>(s); }
template <class F> Jet<F> operator/(const F& s, const Jet<F>& a) { return Jet<F>(s) / a; }

template <class F> bool operator==(const Jet<F>& a, const Jet<F>& b) { return a.v == b.v && a.d == b.d; }
template <class F> bool operator!=(const Jet<F>& a, const Jet<F>& b) { return !(a == b); }

// Value-part accessors let field-generic geometry compare magnitudes and test
// denominators without touching partials.
template <class F> const F& jet_value(const F& x) { return x; }
template <class F> const F& jet_value(const Jet<F>& x) { return x.v; }

template <class F>
struct FieldTraits<Jet<F>> {
  static constexpr bool exact = FieldTraits<F>::exact;
  static Jet<F> from_rational(const Rational& r) { return Jet<F>(FieldTraits<F>::from_rational(r)); }
};

// Differentiable scalar function of a coordinate vector, evaluated on jets.
template <class F>
using DiffFn = std::function<Jet<F>(const std::vector<Jet<F>>&)>;

// Seeds one jet per input value: the k-th output carries value values[k] and
// the k-th unit partial vector.
template <class F>
std::vector<Jet<F>> jet_seed(const std::vector<F>& values) {
  if (values.empty()) throw std::invalid_argument("jet_seed requires a nonempty input");
  std::vector<Jet<F>> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    out.push_back(Jet<F>::seeded(values[i], i, values.size()));
  return out;
}

}  // namespace pentagram
