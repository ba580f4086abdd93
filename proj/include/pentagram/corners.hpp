#pragma once
// Corner-coordinate dynamics on the 2n cyclic coordinates x_1..x_2n
// (1-based flag indexing): the map in coordinates, the scaling action,
// cyclic shifts, the Euler derivative that reads off scaling weight.

#include <stdexcept>
#include <vector>

#include "pentagram/field.hpp"
#include "pentagram/jet.hpp"

namespace pentagram {

// Cyclic 1-based accessor: index i refers to x_i, any integer i accepted.
template <class F>
const F& cyclic_at(const std::vector<F>& v, long i) {
  long m = static_cast<long>(v.size());
  long k = (i - 1) % m;
  if (k < 0) k += m;
  return v[static_cast<std::size_t>(k)];
}

template <class F>
std::vector<F> pentagram_map_coords(const std::vector<F>& v) {
  long m = static_cast<long>(v.size());
  if (m < 10 || m % 2 != 0) throw std::invalid_argument("corner vector must hold 2n >= 10 entries");
  long n = m / 2;
  std::vector<F> y(v.size());
  using U = std::decay_t<decltype(jet_value(v[0]))>;
  auto x = [&](long i) -> const F& { return cyclic_at(v, i); };
  for (long i = 1; i <= n; ++i) {
    F dodd = F(1) - x(2 * i + 1) * x(2 * i + 2);
    F deven = F(1) - x(2 * i - 1) * x(2 * i);
    if (jet_value(dodd) == U(0) || jet_value(deven) == U(0))
      throw std::domain_error("map undefined at input");
    F nodd = F(1) - x(2 * i - 3) * x(2 * i - 2);
    F neven = F(1) - x(2 * i + 3) * x(2 * i + 4);
    y[static_cast<std::size_t>(2 * i - 2)] = x(2 * i - 1) * nodd / dodd;
    y[static_cast<std::size_t>(2 * i - 1)] = x(2 * i + 2) * neven / deven;
  }
  return y;
}

// Scaling action: odd-indexed entries scale by s, even-indexed by 1/s.
template <class F>
std::vector<F> rescale(const std::vector<F>& v, const F& s) {
  using U = std::decay_t<decltype(jet_value(s))>;
  if (jet_value(s) == U(0)) throw std::invalid_argument("rescale requires a nonzero scale");
  std::vector<F> y(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) y[j] = (j % 2 == 0) ? F(v[j] * s) : F(v[j] / s);
  return y;
}

// x_i becomes x_{i+r}, cyclically.
template <class F>
std::vector<F> cyclic_shift(const std::vector<F>& v, long r) {
  long m = static_cast<long>(v.size());
  std::vector<F> y(v.size());
  for (long j = 0; j < m; ++j) {
    long k = (j + r) % m;
    if (k < 0) k += m;
    y[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(k)];
  }
  return y;
}

// Derivative along the scaling direction: sum of (-1)^(i+1) x_i dF/dx_i,
// giving weight +1 to odd coordinates and -1 to even ones. Applied to a
// weight-homogeneous function it returns weight times the value.
template <class F>
F euler_derivative(const DiffFn<F>& f, const std::vector<F>& v) {
  Jet<F> r = f(jet_seed(v));
  if (r.width() == 0) return F(0);
  F acc(0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    F term = v[j] * r.d[j];
    acc = (j % 2 == 0) ? F(acc + term) : F(acc - term);
  }
  return acc;
}

}  // namespace pentagram
