#pragma once
// Closed polygons and twisted rays as homogeneous vertex lists: the geometric
// pentagram map, corner-invariant extraction, monodromy, convexity in the
// affine patch, projective equivalence, and random convex test data.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pentagram/corners.hpp"
#include "pentagram/field.hpp"
#include "pentagram/geom.hpp"
#include "pentagram/rng.hpp"

namespace pentagram {

template <class F>
struct ClosedPolygon {
  std::vector<Vec3<F>> v;  // cyclically indexed, 0-based

  std::size_t size() const { return v.size(); }
  const Vec3<F>& at(long i) const {
    long n = static_cast<long>(v.size());
    long k = i % n;
    if (k < 0) k += n;
    return v[static_cast<std::size_t>(k)];
  }
};

template <class F>
struct TwistedRay {
  long n = 0;                         // quasi-period
  std::vector<Vec3<F>> vertices;      // finite prefix v_1, v_2, ...
  std::optional<Mat3<F>> monodromy;   // map with v_{i+n} projectively equal to M(v_i)
};

// Vertex i of the image is the intersection of the two short diagonals
// (v_{i-1} v_{i+1}) and (v_i v_{i+2}); the labelling offset is fixed to zero,
// the unique choice commuting with the coordinate map (see extract_corners).
template <class F>
ClosedPolygon<F> pentagram_map_geometric(const ClosedPolygon<F>& p) {
  long n = static_cast<long>(p.size());
  if (n < 5) throw std::invalid_argument("polygon needs at least 5 vertices");
  ClosedPolygon<F> out;
  out.v.reserve(p.size());
  try {
    for (long i = 0; i < n; ++i) {
      Vec3<F> d1 = join(p.at(i - 1), p.at(i + 1));
      Vec3<F> d2 = join(p.at(i), p.at(i + 2));
      out.v.push_back(normalize_triple(meet(d1, d2)));
    }
  } catch (const std::domain_error&) {
    throw std::domain_error("map undefined at input");
  }
  return out;
}

// Corner invariants x_1..x_2n: flag i contributes the two inverse cross
// ratios of four collinear points cut on the lines (v_{i-2} v_{i-1}) and
// (v_{i+2} v_{i+1}) by nearby edges.
template <class F>
std::vector<F> extract_corners(const ClosedPolygon<F>& p) {
  long n = static_cast<long>(p.size());
  if (n < 5) throw std::invalid_argument("polygon needs at least 5 vertices");
  std::vector<F> x(2 * static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) {
    try {
      const Vec3<F>&vm2 = p.at(i - 2), &vm1 = p.at(i - 1), &v0 = p.at(i), &vp1 = p.at(i + 1),
                   &vp2 = p.at(i + 2);
      Vec3<F> lm = join(vm2, vm1);
      x[static_cast<std::size_t>(2 * i - 2)] =
          inverse_cross_ratio(vm2, vm1, meet(lm, join(v0, vp1)), meet(lm, join(vp1, vp2)));
      Vec3<F> lp = join(vp2, vp1);
      x[static_cast<std::size_t>(2 * i - 1)] =
          inverse_cross_ratio(vp2, vp1, meet(lp, join(v0, vm1)), meet(lp, join(vm1, vm2)));
    } catch (const std::domain_error&) {
      throw std::domain_error("corner invariant undefined at flag " + std::to_string(i));
    }
  }
  return x;
}

// The projective map carrying (v_1..v_4) to (v_{n+1}..v_{n+4}).
template <class F>
Mat3<F> monodromy_of_ray(const TwistedRay<F>& r) {
  if (r.n < 1 || r.vertices.size() < static_cast<std::size_t>(r.n) + 4)
    throw std::invalid_argument("ray prefix must hold at least n + 4 vertices");
  std::array<Vec3<F>, 4> src, dst;
  for (int k = 0; k < 4; ++k) {
    src[k] = r.vertices[static_cast<std::size_t>(k)];
    dst[k] = r.vertices[static_cast<std::size_t>(r.n + k)];
  }
  try {
    return map_from_correspondence(src, dst);
  } catch (const std::domain_error&) {
    throw std::domain_error("monodromy undefined");
  }
}

// Convexity in the affine patch z = 1: all cyclic edge-pair cross products
// must share one strict sign.
template <class F>
bool is_convex(const ClosedPolygon<F>& p) {
  long n = static_cast<long>(p.size());
  std::vector<std::array<F, 2>> a;
  a.reserve(p.size());
  using U = std::decay_t<decltype(jet_value(p.v[0][0]))>;
  for (const Vec3<F>& q : p.v) {
    if (jet_value(q[2]) == U(0)) throw std::domain_error("choose different affine patch");
    a.push_back({q[0] / q[2], q[1] / q[2]});
  }
  int sign = 0;
  for (long i = 0; i < n; ++i) {
    const auto &p0 = a[static_cast<std::size_t>(i)], &p1 = a[static_cast<std::size_t>((i + 1) % n)],
               &p2 = a[static_cast<std::size_t>((i + 2) % n)];
    F c = (p1[0] - p0[0]) * (p2[1] - p1[1]) - (p1[1] - p0[1]) * (p2[0] - p1[0]);
    int s = jet_value(c) > U(0) ? 1 : (jet_value(c) < U(0) ? -1 : 0);
    if (s == 0) return false;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return true;
}

template <class F>
ClosedPolygon<F> apply_map(const Mat3<F>& m, const ClosedPolygon<F>& p) {
  ClosedPolygon<F> out;
  out.v.reserve(p.size());
  for (const Vec3<F>& q : p.v) out.v.push_back(apply_point(m, q));
  return out;
}

namespace detail {
template <class F>
bool equivalent_in_order(const std::vector<Vec3<F>>& p, const std::vector<Vec3<F>>& q, double tol) {
  std::array<Vec3<F>, 4> src, dst;
  for (int k = 0; k < 4; ++k) {
    src[k] = p[static_cast<std::size_t>(k)];
    dst[k] = q[static_cast<std::size_t>(k)];
  }
  Mat3<F> m;
  try {
    m = map_from_correspondence(src, dst);
  } catch (const std::domain_error&) {
    throw std::domain_error("equivalence test undefined");
  }
  for (std::size_t i = 4; i < p.size(); ++i)
    if (!projectively_equal(apply_point(m, p[i]), q[i], tol)) return false;
  return true;
}
}  // namespace detail

// True when some projective map carries p onto q vertex by vertex; with
// allow_relabel the 2n dihedral relabelings of q are also tried.
template <class F>
bool projectively_equivalent(const ClosedPolygon<F>& p, const ClosedPolygon<F>& q,
                             bool allow_relabel, double tol = 1e-9) {
  if (p.size() != q.size()) return false;
  long n = static_cast<long>(p.size());
  if (n < 5) throw std::invalid_argument("polygon needs at least 5 vertices");
  if (!allow_relabel) return detail::equivalent_in_order(p.v, q.v, tol);
  for (long s = 0; s < n; ++s) {
    for (int dir : {1, -1}) {
      std::vector<Vec3<F>> rel;
      rel.reserve(q.size());
      for (long i = 0; i < n; ++i) rel.push_back(q.at(s + dir * i));
      bool ok = false;
      try {
        ok = detail::equivalent_in_order(p.v, rel, tol);
      } catch (const std::domain_error&) {
        continue;  // this relabeling has a degenerate leading quadruple
      }
      if (ok) return true;
    }
  }
  return false;
}

// Deterministic convex n-gon with rational coordinates: n distinct sorted
// tangent-half-angle parameters t in [-3, 3] mapped onto the ellipse
// ((1-t^2)/(1+t^2) * 2, 2t/(1+t^2)).
template <class F = Rational>
ClosedPolygon<F> random_convex_polygon(long n, std::uint64_t seed) {
  if (n < 5) throw std::invalid_argument("polygon needs at least 5 vertices");
  SplitMix64 rng(seed);
  std::set<long> ks;
  while (ks.size() < static_cast<std::size_t>(n))
    ks.insert(rng.in_range(-3L * kSampleDenominator, 3L * kSampleDenominator));
  ClosedPolygon<F> out;
  out.v.reserve(static_cast<std::size_t>(n));
  for (long k : ks) {
    Rational t(k, kSampleDenominator);
    Rational d = 1 + t * t;
    Rational px = 2 * (1 - t * t) / d, py = 2 * t / d;
    out.v.push_back({FieldTraits<F>::from_rational(px), FieldTraits<F>::from_rational(py), F(1)});
  }
  return out;
}

inline ClosedPolygon<double> regular_polygon(long n) {
  ClosedPolygon<double> p;
  p.v.reserve(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) {
    double th = 2.0 * std::acos(-1.0) * static_cast<double>(k) / static_cast<double>(n);
    p.v.push_back({std::cos(th), std::sin(th), 1.0});
  }
  return p;
}

inline ClosedPolygon<double> to_double_polygon(const ClosedPolygon<Rational>& p) {
  ClosedPolygon<double> out;
  out.v.reserve(p.size());
  for (const Vec3<Rational>& q : p.v) out.v.push_back({to_double(q[0]), to_double(q[1]), to_double(q[2])});
  return out;
}

// Pins the affine frame of a float polygon with anisotropy removed: patch
// z = 1, barycenter at the origin, unit coordinate covariance. Raw orbits of
// the map flatten onto a line exponentially fast; isotropic rescaling cannot
// stop that, so long float orbits must re-frame with this between steps. The
// map commutes with every projective change of frame, so re-framing never
// changes the orbit of the underlying projective classes.
inline ClosedPolygon<double> affine_whiten(const ClosedPolygon<double>& p) {
  double cx = 0, cy = 0;
  std::vector<std::array<double, 2>> a;
  a.reserve(p.size());
  for (const Vec3<double>& q : p.v) {
    if (q[2] == 0) throw std::domain_error("choose different affine patch");
    a.push_back({q[0] / q[2], q[1] / q[2]});
    cx += a.back()[0];
    cy += a.back()[1];
  }
  double n = static_cast<double>(p.size());
  cx /= n;
  cy /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto& q : a) {
    q[0] -= cx;
    q[1] -= cy;
    sxx += q[0] * q[0];
    sxy += q[0] * q[1];
    syy += q[1] * q[1];
  }
  sxx /= n;
  sxy /= n;
  syy /= n;
  // Inverse Cholesky factor of the covariance: q -> L^-1 q has covariance 1.
  // The conditional variance of y given x detects collinear frames; it is
  // compared against syy at a relative threshold because roundoff keeps it
  // from reaching an exact zero.
  double l00 = std::sqrt(sxx);
  if (!(l00 > 0)) throw std::domain_error("degenerate polygon collapses to a line");
  double l10 = sxy / l00;
  double rest = syy - l10 * l10;
  if (!(rest > 1e-12 * syy)) throw std::domain_error("degenerate polygon collapses to a line");
  double l11 = std::sqrt(rest);
  ClosedPolygon<double> out;
  out.v.reserve(p.size());
  for (auto& q : a) {
    double u = q[0] / l00;
    out.v.push_back({u, (q[1] - l10 * u) / l11, 1.0});
  }
  return out;
}

// Pins the affine frame of a float polygon: patch z = 1, barycenter at the
// origin, root-mean-square vertex radius 1. Keeps long orbits comparable.
inline ClosedPolygon<double> affine_normalize(const ClosedPolygon<double>& p) {
  double cx = 0, cy = 0;
  std::vector<std::array<double, 2>> a;
  a.reserve(p.size());
  for (const Vec3<double>& q : p.v) {
    if (q[2] == 0) throw std::domain_error("choose different affine patch");
    a.push_back({q[0] / q[2], q[1] / q[2]});
    cx += a.back()[0];
    cy += a.back()[1];
  }
  cx /= static_cast<double>(p.size());
  cy /= static_cast<double>(p.size());
  double rms = 0;
  for (auto& q : a) {
    q[0] -= cx;
    q[1] -= cy;
    rms += q[0] * q[0] + q[1] * q[1];
  }
  rms = std::sqrt(rms / static_cast<double>(p.size()));
  if (rms == 0) throw std::domain_error("degenerate polygon collapses to a point");
  ClosedPolygon<double> out;
  out.v.reserve(p.size());
  for (auto& q : a) out.v.push_back({q[0] / rms, q[1] / rms, 1.0});
  return out;
}

}  // namespace pentagram
