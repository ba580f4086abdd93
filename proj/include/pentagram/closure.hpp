#pragma once
// Polygon reconstruction from corner values: stepwise geometric ray
// propagation, window-polynomial formulas for points and lines, closure
// polynomials that cut out closed polygons, the chart onto closed n-gons
// from 2n-8 inner corner values, and the one-parameter family P^u.

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pentagram/admissible.hpp"
#include "pentagram/corners.hpp"
#include "pentagram/field.hpp"
#include "pentagram/geom.hpp"
#include "pentagram/polygon.hpp"

namespace pentagram {

// Describes O_a^b (parity O) or E_a^b (parity E) over zero-based ray
// variables; a <= -5 means no lower cut.
struct WindowPolynomial {
  long a;
  long b;
  InvariantParity parity;
};

template <class F, class Fn>
F eval_window_polynomial_fn(const WindowPolynomial& w, Fn&& vals) {
  const auto& monos = window_monomials(w.a, w.b, w.parity);
  F acc(0);
  for (const WindowMonomial& m : monos) {
    F p(1);
    for (long idx : m.factors) p = p * vals(idx);
    acc = m.sign > 0 ? F(acc + p) : F(acc - p);
  }
  return acc;
}

template <class F>
F eval_window_polynomial(const WindowPolynomial& w, const std::vector<F>& x) {
  long lo = std::max(w.a + 1, 0L);
  if (w.b - 1 >= static_cast<long>(x.size()) && w.b - 1 >= lo)
    throw std::invalid_argument("ray values do not cover the window");
  return eval_window_polynomial_fn<F>(w, [&x](long j) -> const F& {
    return x[static_cast<std::size_t>(j)];
  });
}

namespace detail {
template <class F>
std::vector<Vec3<F>> initial_square() {
  return {Vec3<F>{F(0), F(0), F(1)}, Vec3<F>{F(1), F(0), F(1)}, Vec3<F>{F(1), F(1), F(1)},
          Vec3<F>{F(0), F(1), F(1)}};
}
}  // namespace detail

// Extends the standard unit square R_0..R_3 one vertex at a time; the vertex
// R_m is pinned by two cross-ratio conditions consuming values at ray
// positions 2m-8 and 2m-7.
template <class F, class Fn>
std::vector<Vec3<F>> propagate_ray_geometric_fn(Fn&& vals, long count) {
  if (count < 1) throw std::invalid_argument("propagation needs a positive vertex count");
  std::vector<Vec3<F>> r = detail::initial_square<F>();
  if (count < 4) {
    r.resize(static_cast<std::size_t>(count));
    return r;
  }
  r.reserve(static_cast<std::size_t>(count));
  for (long m = 4; m < count; ++m) {
    try {
      const Vec3<F>&A = r[m - 4], &B = r[m - 3], &C = r[m - 2], &D = r[m - 1];
      F chi1 = vals(2 * m - 8);
      F chi2 = vals(2 * m - 7);
      Vec3<F> c3 = meet(join(A, B), join(C, D));
      Vec3<F> q = solve_fourth_point(A, B, c3, chi1, A, B);
      Vec3<F> ell = join(D, q);
      Vec3<F> e = meet(ell, join(C, B));
      Vec3<F> f = meet(ell, join(B, A));
      r.push_back(normalize_triple(solve_first_point(D, e, f, chi2, D, q)));
    } catch (const std::domain_error&) {
      throw std::domain_error("propagation failed at step " + std::to_string(m));
    }
  }
  return r;
}

// Corner values are consumed cyclically starting from the first entry.
template <class F>
std::vector<Vec3<F>> propagate_ray_geometric(const std::vector<F>& x, long count) {
  if (x.empty()) throw std::invalid_argument("propagation needs corner values");
  long len = static_cast<long>(x.size());
  return propagate_ray_geometric_fn<F>(
      [&x, len](long j) -> const F& { return x[static_cast<std::size_t>(j % len)]; }, count);
}

// Vertex with zero-based ray index 4 + k/2 (k even), as window polynomials
// in the ray values; agrees projectively with geometric propagation.
template <class F>
Vec3<F> reconstruct_points(const std::vector<F>& x, long k) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("reconstruction index must be even and nonnegative");
  long b = 3 + k;
  F ob = eval_window_polynomial(WindowPolynomial{-5, b, InvariantParity::O}, x);
  F o1b = eval_window_polynomial(WindowPolynomial{1, b, InvariantParity::O}, x);
  F o3b = eval_window_polynomial(WindowPolynomial{3, b, InvariantParity::O}, x);
  F x01 = x.at(0) * x.at(1);
  Vec3<F> p{ob - o1b + x01 * o3b, ob, ob + x01 * o3b};
  if (is_zero_triple(p)) throw std::domain_error("degenerate reconstruction");
  return p;
}

// Line through the vertices with ray indices 3 + k/2 and 4 + k/2 (k even).
template <class F>
Vec3<F> reconstruct_lines(const std::vector<F>& x, long k) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("reconstruction index must be even and nonnegative");
  long b = 2 + k;
  F eb = eval_window_polynomial(WindowPolynomial{-5, b, InvariantParity::E}, x);
  F e0b = eval_window_polynomial(WindowPolynomial{0, b, InvariantParity::E}, x);
  F e2b = eval_window_polynomial(WindowPolynomial{2, b, InvariantParity::E}, x);
  Vec3<F> l{eb - e0b, e0b - x.at(0) * e2b, -eb};
  if (is_zero_triple(l)) throw std::domain_error("degenerate reconstruction");
  return l;
}

// The full window polynomial of degree window 2n-5 evaluated on the corner
// vector and on each of its 2n cyclic shifts; all values vanish exactly when
// the vector comes from a closed polygon.
template <class F>
std::vector<F> closure_polynomials(const std::vector<F>& v) {
  long m = static_cast<long>(v.size());
  if (m < 10 || m % 2 != 0) throw std::invalid_argument("corner vector must hold 2n >= 10 entries");
  long n = m / 2;
  WindowPolynomial w{-5, 2 * n - 5, InvariantParity::O};
  std::vector<F> out;
  out.reserve(static_cast<std::size_t>(m));
  for (long r = 0; r < m; ++r)
    out.push_back(eval_window_polynomial_fn<F>(
        w, [&v, m, r](long j) -> const F& { return v[static_cast<std::size_t>((j + r) % m)]; }));
  return out;
}

template <class F>
struct RayChart {
  long n = 0;
  std::vector<F> inner;      // corner positions 5..2n-4 (1-based)
  ClosedPolygon<F> polygon;  // the n closed-up vertices
  std::vector<F> corners;    // full 2n corner vector of the polygon

  // Induced outer corner values (a, b, c, d, d', c', b', a').
  std::array<F, 8> outer() const {
    std::size_t m = corners.size();
    return {corners[0],     corners[1],     corners[2],     corners[3],
            corners[m - 4], corners[m - 3], corners[m - 2], corners[m - 1]};
  }
};

// Closes up the periodic ray of the 2n-8 inner values into an n-gon: the
// first n ray points, relabeled so the inner block lands at corner positions
// 5..2n-4, which the re-extracted corner vector reproduces exactly.
template <class F>
RayChart<F> close_up(long n, const std::vector<F>& inner) {
  if (n < 7) throw std::invalid_argument("close_up requires n >= 7");
  long period = 2 * n - 8;
  if (static_cast<long>(inner.size()) != period)
    throw std::invalid_argument("close_up needs exactly 2n-8 inner values");
  RayChart<F> chart;
  chart.n = n;
  chart.inner = inner;
  try {
    std::vector<Vec3<F>> r = propagate_ray_geometric_fn<F>(
        [&inner, period](long j) -> const F& { return inner[static_cast<std::size_t>(j % period)]; },
        n);
    chart.polygon.v.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
      chart.polygon.v.push_back(r[static_cast<std::size_t>(((i - 1) % n + n) % n)]);
    chart.corners = extract_corners(chart.polygon);
  } catch (const std::domain_error&) {
    throw std::domain_error("closure failed");
  }
  if constexpr (FieldTraits<F>::exact) {
    for (long j = 0; j < period; ++j)
      if (!(chart.corners[static_cast<std::size_t>(j + 4)] == inner[static_cast<std::size_t>(j)]))
        throw std::domain_error("closure failed");
  }
  return chart;
}

// Inner list (u, u^2, ..., u^{n-4}, u^{n-4}, ..., u^2, u).
inline std::vector<Rational> pu_inner_values(long n, const Rational& u) {
  std::vector<Rational> half;
  for (long j = 1; j <= n - 4; ++j) half.push_back(rational_pow(u, j));
  std::vector<Rational> inner = half;
  inner.insert(inner.end(), half.rbegin(), half.rend());
  return inner;
}

inline RayChart<Rational> pu_polygon(long n, const Rational& u) {
  if (u <= 0) throw std::invalid_argument("pu_polygon requires u > 0");
  return close_up(n, pu_inner_values(n, u));
}

}  // namespace pentagram
