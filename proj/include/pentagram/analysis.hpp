#pragma once
// Independence analysis of the invariants on and off the closure variety:
// ambient and chart-restricted Jacobians, the tangent basis of the chart,
// the two standard independence lists, expected level-set dimensions, and
// small-u valuation diagnostics for gradients along the P^u family.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "pentagram/closure.hpp"
#include "pentagram/field.hpp"
#include "pentagram/invariants.hpp"
#include "pentagram/jet.hpp"
#include "pentagram/matrix.hpp"
#include "pentagram/poisson.hpp"
#include "pentagram/valuation.hpp"

namespace pentagram {

// O_k + E_k (sign +1) or O_k - E_k (sign -1); k = n selects the Casimir
// coordinate products.
inline DiffFn<Rational> paired_invariant_fn(long n, long k, int sign) {
  DiffFn<Rational> o = k == n ? casimir_fn<Rational>(InvariantParity::O)
                              : invariant_fn<Rational>(n, k, InvariantParity::O);
  DiffFn<Rational> e = k == n ? casimir_fn<Rational>(InvariantParity::E)
                              : invariant_fn<Rational>(n, k, InvariantParity::E);
  return [o, e, sign](const std::vector<Jet<Rational>>& x) {
    return sign > 0 ? o(x) + e(x) : o(x) - e(x);
  };
}

struct LabeledFn {
  std::string label;
  long k = 0;
  int sign = 1;
  DiffFn<Rational> fn;
};

inline LabeledFn make_paired(long n, long k, int sign) {
  return {"A" + std::to_string(k) + (sign > 0 ? "+" : "-"), k, sign, paired_invariant_fn(n, k, sign)};
}

// Functions expected to have independent differentials in the ambient
// coordinates: n-2 of them for odd n, n-1 for even n.
inline std::vector<LabeledFn> independence_list_full(long n) {
  long m = n % 2 == 0 ? n / 2 : (n - 1) / 2;
  std::vector<LabeledFn> out;
  for (long k = 3; k <= m; ++k) out.push_back(make_paired(n, k, +1));
  out.push_back(make_paired(n, n, +1));
  for (long k = 2; k <= m; ++k) out.push_back(make_paired(n, k, -1));
  out.push_back(make_paired(n, n, -1));
  return out;
}

// Functions expected to stay independent after restriction to the closure
// variety: n-4 of them for odd n, n-3 for even n.
inline std::vector<LabeledFn> independence_list_restricted(long n) {
  long m = n % 2 == 0 ? n / 2 : (n - 1) / 2;
  std::vector<LabeledFn> out;
  for (long k = 3; k <= m; ++k) out.push_back(make_paired(n, k, -1));
  for (long k = 3; k <= m; ++k) out.push_back(make_paired(n, k, +1));
  out.push_back(make_paired(n, n, +1));
  return out;
}

// Rows are the ambient gradients of funcs at v.
inline RationalMatrix jacobian_full(const std::vector<Rational>& v,
                                    const std::vector<DiffFn<Rational>>& funcs) {
  std::vector<Jet<Rational>> seeds = jet_seed(v);
  RationalMatrix out(static_cast<long>(funcs.size()), static_cast<long>(v.size()));
  for (std::size_t r = 0; r < funcs.size(); ++r) {
    Jet<Rational> j = funcs[r](seeds);
    for (std::size_t c = 0; c < v.size(); ++c)
      out.at(static_cast<long>(r), static_cast<long>(c)) = j.d.empty() ? Rational(0) : j.d[c];
  }
  return out;
}

// Corner vector of the chart re-derived on jets seeded at the inner values.
inline std::vector<Jet<Rational>> chart_corner_jets(const RayChart<Rational>& chart) {
  RayChart<Jet<Rational>> jc = close_up(chart.n, jet_seed(chart.inner));
  return jc.corners;
}

// The 2n-8 coordinate fields of the chart, as ambient vectors of length 2n:
// vector j holds the derivative of every corner value along inner value j.
// The inner block is exactly the identity.
inline std::vector<std::vector<Rational>> tangent_basis(const RayChart<Rational>& chart) {
  std::vector<Jet<Rational>> corners = chart_corner_jets(chart);
  std::size_t width = chart.inner.size();
  std::vector<std::vector<Rational>> basis(width, std::vector<Rational>(corners.size()));
  for (std::size_t i = 0; i < corners.size(); ++i)
    for (std::size_t j = 0; j < width; ++j)
      basis[j][i] = corners[i].d.empty() ? Rational(0) : corners[i].d[j];
  return basis;
}

// Rows are gradients of funcs composed with the chart, taken in the 2n-8
// inner coordinates.
inline RationalMatrix restricted_jacobian(const RayChart<Rational>& chart,
                                          const std::vector<DiffFn<Rational>>& funcs) {
  std::vector<Jet<Rational>> corners = chart_corner_jets(chart);
  long width = static_cast<long>(chart.inner.size());
  RationalMatrix out(static_cast<long>(funcs.size()), width);
  for (std::size_t r = 0; r < funcs.size(); ++r) {
    Jet<Rational> j = funcs[r](corners);
    for (long c = 0; c < width; ++c)
      out.at(static_cast<long>(r), c) = j.d.empty() ? Rational(0) : j.d[static_cast<std::size_t>(c)];
  }
  return out;
}

struct CovectorIdentityReport {
  std::array<double, 3> residuals{};  // componentwise, relative to the largest term
  bool negative_root = false;
};

// Residuals of the three exact identities satisfied by the invariant
// differentials at corner vectors of closed polygons. Gradients are exact;
// the cube-root coefficients are evaluated in Float64.
inline CovectorIdentityReport closed_covector_identities(const std::vector<Rational>& v) {
  long n = static_cast<long>(v.size()) / 2;
  long mm = n / 2;
  std::vector<Jet<Rational>> seeds = jet_seed(v);
  std::size_t w = v.size();

  auto grad = [&](const DiffFn<Rational>& f, double& value) {
    Jet<Rational> j = f(seeds);
    value = to_double(j.v);
    std::vector<double> g(w, 0.0);
    if (!j.d.empty())
      for (std::size_t i = 0; i < w; ++i) g[i] = to_double(j.d[i]);
    return g;
  };

  double on = 0, en = 0, ignored = 0;
  std::vector<double> d_on = grad(casimir_fn<Rational>(InvariantParity::O), on);
  std::vector<double> d_en = grad(casimir_fn<Rational>(InvariantParity::E), en);
  std::vector<double> sum_o(w, 0.0), sum_e(w, 0.0), jsum_o(w, 0.0), jsum_e(w, 0.0);
  for (long k = 1; k <= mm; ++k) {
    std::vector<double> go = grad(invariant_fn<Rational>(n, k, InvariantParity::O), ignored);
    std::vector<double> ge = grad(invariant_fn<Rational>(n, k, InvariantParity::E), ignored);
    for (std::size_t i = 0; i < w; ++i) {
      sum_o[i] += go[i];
      sum_e[i] += ge[i];
      jsum_o[i] += static_cast<double>(k) * go[i];
      jsum_e[i] += static_cast<double>(k) * ge[i];
    }
  }

  double co = signed_cbrt(on), ce = signed_cbrt(en);
  CovectorIdentityReport rep;
  rep.negative_root = on < 0 || en < 0;
  auto residual = [&](const std::vector<const std::vector<double>*>& terms,
                      const std::vector<double>& coeff) {
    double scale = 0, worst = 0;
    for (std::size_t i = 0; i < w; ++i) {
      double s = 0;
      for (std::size_t t = 0; t < terms.size(); ++t) {
        double piece = coeff[t] * (*terms[t])[i];
        s += piece;
        scale = std::max(scale, std::fabs(piece));
      }
      worst = std::max(worst, std::fabs(s));
    }
    return scale > 0 ? worst / scale : worst;
  };

  rep.residuals[0] =
      residual({&sum_o, &d_on, &d_en}, {1.0, -2.0 * ce / co, -co * co / (ce * ce)});
  rep.residuals[1] =
      residual({&sum_e, &d_en, &d_on}, {1.0, -2.0 * co / ce, -ce * ce / (co * co)});
  double c3 = static_cast<double>(n) * ce * ce * co * co;
  rep.residuals[2] =
      residual({&jsum_e, &jsum_o, &d_en, &d_on}, {co, ce, -c3 / en, -c3 / on});
  return rep;
}

// Expected dimension of a generic joint level set of the invariants on the
// space of closed n-gons modulo projective maps.
inline long level_set_dimension(long n) {
  if (n < 7) throw std::invalid_argument("level_set_dimension requires n >= 7");
  return n % 2 == 0 ? n - 5 : n - 4;
}

// Valuation slopes of the gradient weights along the one-parameter family:
// 0, 0, 0, 2, 3, 6, 7, 10, 11, ...
inline long alpha_term(long k) {
  if (k <= 3) return 0;
  return k % 2 == 0 ? 2 * k - 6 : 2 * k - 7;
}

inline long alpha_bound(long k) {
  long s = 0;
  for (long i = 1; i <= k; ++i) s += alpha_term(i);
  return s;
}

struct HeftEntry {
  std::string label;
  long k = 0;
  int sign = 1;
  bool defined = false;   // at least one gradient component nonzero at both samples
  long min_valuation = 0; // over nonzero gradient components
  double worst_residual = 0;
  long bound = 0;         // alpha_bound(k), or (n-3)(n-4)/2 for the Casimir pair
};

struct HeftDiagnostics {
  long n = 0;
  Rational u;
  std::vector<HeftEntry> entries;
};

// Measures, for each paired invariant, the smallest u-valuation among its
// ambient gradient components at P^u, sampling at u and u/2.
inline HeftDiagnostics heft_report(long n, const Rational& u) {
  HeftDiagnostics diag;
  diag.n = n;
  diag.u = u;
  Rational ratio(1, 2);
  RayChart<Rational> c0 = pu_polygon(n, u);
  RayChart<Rational> c1 = pu_polygon(n, Rational(u * ratio));
  std::vector<Jet<Rational>> s0 = jet_seed(c0.corners), s1 = jet_seed(c1.corners);
  long m = n % 2 == 0 ? n / 2 : (n - 1) / 2;
  std::vector<std::pair<long, int>> keys;
  for (long k = 2; k <= m; ++k) {
    keys.push_back({k, +1});
    keys.push_back({k, -1});
  }
  keys.push_back({n, +1});
  keys.push_back({n, -1});
  for (auto [k, sign] : keys) {
    LabeledFn f = make_paired(n, k, sign);
    Jet<Rational> j0 = f.fn(s0), j1 = f.fn(s1);
    HeftEntry e;
    e.label = f.label;
    e.k = k;
    e.sign = sign;
    e.bound = k == n ? (n - 3) * (n - 4) / 2 : alpha_bound(k);
    for (std::size_t i = 0; i < c0.corners.size(); ++i) {
      Rational g0 = j0.d.empty() ? Rational(0) : j0.d[i];
      Rational g1 = j1.d.empty() ? Rational(0) : j1.d[i];
      if (g0 == 0 || g1 == 0) continue;
      ValuationResult vr = detail::valuation_from_ratio(
          Rational(FieldTraits<Rational>::abs(g0) / FieldTraits<Rational>::abs(g1)),
          Rational(Rational(1) / ratio));
      if (!e.defined || vr.exponent < e.min_valuation) e.min_valuation = vr.exponent;
      if (vr.residual > e.worst_residual) e.worst_residual = vr.residual;
      e.defined = true;
    }
    diag.entries.push_back(std::move(e));
  }
  return diag;
}

}  // namespace pentagram
