#pragma once
// Projective plane primitives over an arbitrary scalar field: homogeneous
// triples, join/meet, inverse cross ratios, cross-ratio solvers on a line,
// 3x3 projective maps, frames from 4-point correspondences, det-1 lifts.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "pentagram/field.hpp"
#include "pentagram/jet.hpp"

namespace pentagram {

template <class F>
using Vec3 = std::array<F, 3>;

template <class F>
Vec3<F> cross(const Vec3<F>& a, const Vec3<F>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class F>
F dot(const Vec3<F>& a, const Vec3<F>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class F>
bool is_zero_triple(const Vec3<F>& a) {
  using U = std::decay_t<decltype(jet_value(a[0]))>;
  return jet_value(a[0]) == U(0) && jet_value(a[1]) == U(0) && jet_value(a[2]) == U(0);
}

// Join of two points is the line through them; meet of two lines is their
// intersection point. Both are the cross product of coordinate triples.
template <class F>
Vec3<F> join(const Vec3<F>& p, const Vec3<F>& q) {
  Vec3<F> r = cross(p, q);
  if (is_zero_triple(r)) throw std::domain_error("degenerate join/meet");
  return r;
}

template <class F>
Vec3<F> meet(const Vec3<F>& l, const Vec3<F>& m) {
  return join(l, m);
}

// Scales the triple so its largest-magnitude coordinate becomes 1. Keeps
// exact propagation sizes bounded and float propagation conditioned.
template <class F>
Vec3<F> normalize_triple(const Vec3<F>& p) {
  using U = std::decay_t<decltype(jet_value(p[0]))>;
  int best = -1;
  U mag(0);
  for (int i = 0; i < 3; ++i) {
    U m = FieldTraits<U>::abs(jet_value(p[i]));
    if (best < 0 || mag < m) {
      best = i;
      mag = m;
    }
  }
  if (!(mag > U(0))) throw std::domain_error("cannot normalize the zero triple");
  return {p[0] / p[best], p[1] / p[best], p[2] / p[best]};
}

// Projective equality: exact fields test the cross product exactly, double
// tests the cross product magnitude against tol scaled by both norms.
template <class F>
bool projectively_equal(const Vec3<F>& a, const Vec3<F>& b, double tol = 1e-9) {
  if constexpr (FieldTraits<F>::exact) {
    (void)tol;
    return is_zero_triple(cross(a, b));
  } else {
    auto norm2 = [](const Vec3<F>& p) { return std::sqrt(to_double(dot(p, p))); };
    double na = norm2(a), nb = norm2(b);
    if (na == 0 || nb == 0) throw std::domain_error("cannot normalize the zero triple");
    return norm2(cross(a, b)) <= tol * na * nb;
  }
}

// Inverse cross ratio of four collinear points (or four concurrent lines),
// evaluated componentwise as (AxB)*(CxD) / (AxC)*(BxD). Exact fields take any
// nonzero-denominator coordinate and cross-check a second one; double takes
// the largest-magnitude denominator.
template <class F>
F inverse_cross_ratio(const Vec3<F>& a, const Vec3<F>& b, const Vec3<F>& c, const Vec3<F>& d) {
  Vec3<F> ab = cross(a, b), cd = cross(c, d), ac = cross(a, c), bd = cross(b, d);
  using U = std::decay_t<decltype(jet_value(a[0]))>;
  if constexpr (FieldTraits<F>::exact) {
    int first = -1;
    F value{};
    for (int i = 0; i < 3; ++i) {
      F den = ac[i] * bd[i];
      if (jet_value(den) == U(0)) continue;
      F r = (ab[i] * cd[i]) / den;
      if (first < 0) {
        first = i;
        value = r;
      } else {
        if (jet_value(r) != jet_value(value)) throw std::domain_error("cross ratio undefined");
        return value;
      }
    }
    if (first < 0) {
      for (int i = 0; i < 3; ++i)
        if (jet_value(ab[i] * cd[i]) != U(0)) throw std::domain_error("cross ratio undefined");
      throw std::domain_error("indeterminate, perturb input");
    }
    return value;
  } else {
    int best = -1;
    U mag(0);
    for (int i = 0; i < 3; ++i) {
      U m = FieldTraits<U>::abs(jet_value(ac[i]) * jet_value(bd[i]));
      if (m > mag) {
        best = i;
        mag = m;
      }
    }
    if (best < 0) throw std::domain_error("indeterminate, perturb input");
    return (ab[best] * cd[best]) / (ac[best] * bd[best]);
  }
}

// Inverse cross ratio of four affine parameters on a line.
template <class F>
F inverse_cross_ratio_affine(const F& t1, const F& t2, const F& t3, const F& t4) {
  return ((t1 - t2) * (t3 - t4)) / ((t1 - t3) * (t2 - t4));
}

// Coordinates (alpha, beta) of X on the line spanned by U, V: X ~ alpha*U + beta*V.
template <class F>
std::pair<F, F> line_coordinates(const Vec3<F>& u, const Vec3<F>& v, const Vec3<F>& x) {
  Vec3<F> n = cross(u, v);
  using Uv = std::decay_t<decltype(jet_value(u[0]))>;
  for (int k = 0; k < 3; ++k) {
    if (jet_value(n[k]) != Uv(0)) {
      F alpha = cross(x, v)[k] / n[k];
      F beta = -(cross(x, u)[k] / n[k]);
      return {alpha, beta};
    }
  }
  throw std::domain_error("line coordinates require independent spanning points");
}

namespace detail {
template <class F>
F det2(const std::pair<F, F>& p, const std::pair<F, F>& q) {
  return p.first * q.second - p.second * q.first;
}
}  // namespace detail

// The point D on line(U,V) with inverse cross ratio [A,B,C,D] = chi.
template <class F>
Vec3<F> solve_fourth_point(const Vec3<F>& a, const Vec3<F>& b, const Vec3<F>& c, const F& chi,
                           const Vec3<F>& u, const Vec3<F>& v) {
  auto pa = line_coordinates(u, v, a);
  auto pb = line_coordinates(u, v, b);
  auto pc = line_coordinates(u, v, c);
  F d12 = detail::det2(pa, pb), d13 = detail::det2(pa, pc);
  F alpha = d12 * pc.first - chi * (d13 * pb.first);
  F beta = d12 * pc.second - chi * (d13 * pb.second);
  Vec3<F> r = {alpha * u[0] + beta * v[0], alpha * u[1] + beta * v[1], alpha * u[2] + beta * v[2]};
  if (is_zero_triple(r)) throw std::domain_error("cross ratio solve degenerate");
  return r;
}

// The point A on line(U,V) with inverse cross ratio [A,B,C,D] = chi.
template <class F>
Vec3<F> solve_first_point(const Vec3<F>& b, const Vec3<F>& c, const Vec3<F>& d, const F& chi,
                          const Vec3<F>& u, const Vec3<F>& v) {
  auto pb = line_coordinates(u, v, b);
  auto pc = line_coordinates(u, v, c);
  auto pd = line_coordinates(u, v, d);
  F dcd = detail::det2(pc, pd), dbd = detail::det2(pb, pd);
  F alpha = pb.first * dcd - chi * (pc.first * dbd);
  F beta = pb.second * dcd - chi * (pc.second * dbd);
  Vec3<F> r = {alpha * u[0] + beta * v[0], alpha * u[1] + beta * v[1], alpha * u[2] + beta * v[2]};
  if (is_zero_triple(r)) throw std::domain_error("cross ratio solve degenerate");
  return r;
}

template <class F>
struct Mat3 {
  std::array<std::array<F, 3>, 3> a{};

  static Mat3 identity() {
    Mat3 m;
    for (int i = 0; i < 3; ++i) m.a[i][i] = F(1);
    return m;
  }
};

template <class F>
Mat3<F> operator*(const Mat3<F>& x, const Mat3<F>& y) {
  Mat3<F> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.a[i][j] = x.a[i][0] * y.a[0][j] + x.a[i][1] * y.a[1][j] + x.a[i][2] * y.a[2][j];
  return r;
}

template <class F>
Vec3<F> apply_point(const Mat3<F>& m, const Vec3<F>& p) {
  return {m.a[0][0] * p[0] + m.a[0][1] * p[1] + m.a[0][2] * p[2],
          m.a[1][0] * p[0] + m.a[1][1] * p[1] + m.a[1][2] * p[2],
          m.a[2][0] * p[0] + m.a[2][1] * p[1] + m.a[2][2] * p[2]};
}

template <class F>
F det(const Mat3<F>& m) {
  return m.a[0][0] * (m.a[1][1] * m.a[2][2] - m.a[1][2] * m.a[2][1]) -
         m.a[0][1] * (m.a[1][0] * m.a[2][2] - m.a[1][2] * m.a[2][0]) +
         m.a[0][2] * (m.a[1][0] * m.a[2][1] - m.a[1][1] * m.a[2][0]);
}

template <class F>
Mat3<F> adjugate(const Mat3<F>& m) {
  Mat3<F> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3;
      int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r.a[i][j] = m.a[i1][j1] * m.a[i2][j2] - m.a[i1][j2] * m.a[i2][j1];
    }
  return r;
}

template <class F>
Mat3<F> inverse(const Mat3<F>& m) {
  F d = det(m);
  using U = std::decay_t<decltype(jet_value(d))>;
  if (jet_value(d) == U(0)) throw std::domain_error("singular projective map");
  Mat3<F> adj = adjugate(m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) adj.a[i][j] = adj.a[i][j] / d;
  return adj;
}

// Lines transform by the inverse transpose of the point map.
template <class F>
Vec3<F> apply_to_line(const Mat3<F>& m, const Vec3<F>& line) {
  Mat3<F> inv = inverse(m);
  return {inv.a[0][0] * line[0] + inv.a[1][0] * line[1] + inv.a[2][0] * line[2],
          inv.a[0][1] * line[0] + inv.a[1][1] * line[1] + inv.a[2][1] * line[2],
          inv.a[0][2] * line[0] + inv.a[1][2] * line[1] + inv.a[2][2] * line[2]};
}

// Matrix with columns lambda_i * Q_i scaled so the columns sum to Q_3; maps
// the standard frame (e_1, e_2, e_3, e_1+e_2+e_3) to the quadruple.
template <class F>
Mat3<F> frame_matrix(const std::array<Vec3<F>, 4>& q) {
  Mat3<F> m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.a[r][c] = q[c][r];
  F d = det(m);
  using U = std::decay_t<decltype(jet_value(d))>;
  if (jet_value(d) == U(0)) throw std::domain_error("degenerate correspondence");
  Mat3<F> adj = adjugate(m);
  Vec3<F> lambda = apply_point(adj, q[3]);  // adj = det * inverse, scale cancels projectively
  for (int c = 0; c < 3; ++c) {
    if (jet_value(lambda[c]) == U(0)) throw std::domain_error("degenerate correspondence");
    for (int r = 0; r < 3; ++r) m.a[r][c] = m.a[r][c] * lambda[c];
  }
  return m;
}

// Scales all entries by the first nonzero one, giving a canonical
// representative of the projective class of the map.
template <class F>
Mat3<F> normalize_map(const Mat3<F>& m) {
  using U = std::decay_t<decltype(jet_value(m.a[0][0]))>;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (jet_value(m.a[i][j]) != U(0)) {
        Mat3<F> r;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) r.a[a][b] = m.a[a][b] / m.a[i][j];
        return r;
      }
  throw std::domain_error("zero projective map");
}

// The unique projective map sending src[k] to dst[k] for k = 0..3.
template <class F>
Mat3<F> map_from_correspondence(const std::array<Vec3<F>, 4>& src, const std::array<Vec3<F>, 4>& dst) {
  return normalize_map(frame_matrix(dst) * inverse(frame_matrix(src)));
}

inline Mat3<double> to_double_matrix(const Mat3<Rational>& m) {
  Rational scale(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational a = FieldTraits<Rational>::abs(m.a[i][j]);
      if (a > scale) scale = a;
    }
  if (scale == 0) throw std::domain_error("zero projective map");
  Mat3<double> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.a[i][j] = to_double(Rational(m.a[i][j] / scale));
  return r;
}

inline Mat3<double> to_double_matrix(const Mat3<double>& m) { return m; }

namespace detail {
inline bool rational_cbrt(const Rational& r, Rational& root) {
  auto icbrt = [](const BigInt& n, BigInt& out) {
    if (n == 0) {
      out = 0;
      return true;
    }
    BigInt lo = 0, hi = BigInt(1) << (msb(n) / 3 + 2);
    while (lo < hi) {
      BigInt mid = (lo + hi + 1) / 2;
      if (mid * mid * mid <= n)
        lo = mid;
      else
        hi = mid - 1;
    }
    out = lo;
    return lo * lo * lo == n;
  };
  bool neg = r < 0;
  BigInt num = numerator(neg ? Rational(-r) : r), den = denominator(r);
  BigInt rn, rd;
  if (!icbrt(num, rn) || !icbrt(den, rd)) return false;
  root = Rational(rn, rd);
  if (neg) root = -root;
  return true;
}
}  // namespace detail

// Divides the map by the real cube root of its determinant, producing det 1.
// Exact maps succeed only when det is a rational cube; otherwise the caller
// must convert to double first.
template <class F>
Mat3<F> sl3_lift(const Mat3<F>& m) {
  if constexpr (FieldTraits<F>::exact) {
    F d = det(m);
    if (d == F(0)) throw std::domain_error("singular projective map");
    Rational root;
    if (!detail::rational_cbrt(d, root)) throw std::domain_error("lift requires float field");
    Mat3<F> r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.a[i][j] = m.a[i][j] / root;
    return r;
  } else {
    double scale = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(m.a[i][j]));
    if (scale == 0) throw std::domain_error("zero projective map");
    Mat3<F> s;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s.a[i][j] = m.a[i][j] / scale;
    double d = det(s);
    if (d == 0) throw std::domain_error("singular projective map");
    double root = std::cbrt(d);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s.a[i][j] /= root;
    return s;
  }
}

template <class F>
F trace(const Mat3<F>& m) {
  return m.a[0][0] + m.a[1][1] + m.a[2][2];
}

}  // namespace pentagram
