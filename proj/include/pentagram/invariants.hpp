#pragma once
// Invariant functions of the corner coordinates in both realizations: signed
// sums of admissible monomials per weight, coordinate-product Casimirs, the
// trace pairing through the lifted quasi-period map, and the five exact
// identities that hold on corner vectors of closed polygons.

#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pentagram/admissible.hpp"
#include "pentagram/closure.hpp"
#include "pentagram/corners.hpp"
#include "pentagram/field.hpp"
#include "pentagram/jet.hpp"
#include "pentagram/polygon.hpp"

namespace pentagram {

// Signed sum of all weight-k admissible monomials at x (length 2n).
template <class T>
T evaluate_admissible_sum(long n, long k, InvariantParity parity, const std::vector<T>& x) {
  if (static_cast<long>(x.size()) != 2 * n)
    throw std::invalid_argument("coordinate vector length must be 2n");
  const auto& monos = enumerate_admissible(n, k, parity);
  T acc(0);
  for (const AdmissibleMonomial& m : monos) {
    T p(1);
    for (long idx : m.factors) p = p * x[static_cast<std::size_t>(idx - 1)];
    acc = m.sign > 0 ? T(acc + p) : T(acc - p);
  }
  return acc;
}

// Product of the odd coordinates (parity O) or the even ones (parity E).
template <class T>
T coordinate_product(InvariantParity parity, const std::vector<T>& x) {
  T acc(1);
  for (std::size_t j = (parity == InvariantParity::O ? 0 : 1); j < x.size(); j += 2)
    acc = acc * x[j];
  return acc;
}

// The two coordinate products over every other odd (or even) index; defined
// for even n, where each is itself a Casimir. Parity O pairs the products
// over indices 4i-1 and 4i+1; parity E over 4i and 4i+2.
template <class T>
std::array<T, 2> half_casimir_products(InvariantParity parity, const std::vector<T>& x) {
  long m = static_cast<long>(x.size());
  long n = m / 2;
  if (n % 2 != 0) throw std::invalid_argument("half-weight Casimirs need even n");
  long base = parity == InvariantParity::O ? -1 : 0;
  T p1(1), p2(1);
  for (long i = 1; i <= n / 2; ++i) {
    p1 = p1 * cyclic_at(x, 4 * i + base);
    p2 = p2 * cyclic_at(x, 4 * i + base + 2);
  }
  return {p1, p2};
}

template <class F>
struct InvariantValues {
  long n = 0;
  std::vector<F> O;  // weights 0..n/2
  std::vector<F> E;
  F On{}, En{};
  bool has_half_casimirs = false;
  F half_O{}, half_E{};  // sums of the two half products, even n only
};

template <class F>
InvariantValues<F> evaluate_invariants(const std::vector<F>& v) {
  long m = static_cast<long>(v.size());
  if (m < 10 || m % 2 != 0) throw std::invalid_argument("corner vector must hold 2n >= 10 entries");
  long n = m / 2;
  InvariantValues<F> out;
  out.n = n;
  for (long k = 0; k <= n / 2; ++k) {
    out.O.push_back(evaluate_admissible_sum(n, k, InvariantParity::O, v));
    out.E.push_back(evaluate_admissible_sum(n, k, InvariantParity::E, v));
  }
  out.On = coordinate_product(InvariantParity::O, v);
  out.En = coordinate_product(InvariantParity::E, v);
  if (n % 2 == 0) {
    out.has_half_casimirs = true;
    auto po = half_casimir_products(InvariantParity::O, v);
    auto pe = half_casimir_products(InvariantParity::E, v);
    out.half_O = po[0] + po[1];
    out.half_E = pe[0] + pe[1];
  }
  return out;
}

// Differentiable-function handles for the bracket machinery.
template <class F>
DiffFn<F> invariant_fn(long n, long k, InvariantParity parity) {
  return [n, k, parity](const std::vector<Jet<F>>& x) {
    return evaluate_admissible_sum(n, k, parity, x);
  };
}

template <class F>
DiffFn<F> casimir_fn(InvariantParity parity) {
  return [parity](const std::vector<Jet<F>>& x) { return coordinate_product(parity, x); };
}

template <class F>
DiffFn<F> half_casimir_sum_fn(InvariantParity parity) {
  return [parity](const std::vector<Jet<F>>& x) {
    auto p = half_casimir_products(parity, x);
    return p[0] + p[1];
  };
}

template <class F>
DiffFn<F> half_casimir_product_fn(InvariantParity parity, int which) {
  return [parity, which](const std::vector<Jet<F>>& x) {
    return half_casimir_products(parity, x)[static_cast<std::size_t>(which)];
  };
}

// The coordinate function x_i, 1-based cyclic.
template <class F>
DiffFn<F> coordinate_fn(long i) {
  return [i](const std::vector<Jet<F>>& x) { return cyclic_at(x, i); };
}

inline double signed_cbrt(double t) { return std::cbrt(t); }

// Pairs the lifted quasi-period map of the ray built from v with the Casimir
// weights. The first component multiplies the trace of the inverse lift by
// On^(2/3) En^(1/3) and matches the sum of the O-weights; the second
// multiplies the forward trace by On^(1/3) En^(2/3) and matches the E-sum.
inline std::pair<double, double> trace_invariants(const std::vector<double>& v) {
  long m = static_cast<long>(v.size());
  if (m < 10 || m % 2 != 0) throw std::invalid_argument("corner vector must hold 2n >= 10 entries");
  long n = m / 2;
  // The ray propagation and the quasi-period solve are poorly conditioned in
  // floating point, so they run exactly on the exactly represented inputs;
  // each returned component reduces to a single real cube root of an exact
  // rational: trace(lift(M)) = cbrt(tr^3/det), trace(lift(M^-1)) =
  // cbrt(tr(adj)^3/det^2).
  std::vector<Rational> vr;
  vr.reserve(v.size());
  for (double t : v) vr.push_back(Rational(t));
  Mat3<Rational> fwd;
  try {
    TwistedRay<Rational> ray;
    ray.n = n;
    ray.vertices = propagate_ray_geometric(vr, n + 4);
    fwd = monodromy_of_ray(ray);
  } catch (const std::domain_error&) {
    throw std::domain_error("monodromy undefined");
  }
  Rational d = det(fwd);
  if (d == 0) throw std::domain_error("monodromy undefined");
  Rational tf = trace(fwd), ti = trace(adjugate(fwd));
  Rational on = coordinate_product(InvariantParity::O, vr);
  Rational en = coordinate_product(InvariantParity::E, vr);
  double first = std::cbrt(to_double(Rational(ti * ti * ti * on * on * en / (d * d))));
  double second = std::cbrt(to_double(Rational(tf * tf * tf * on * en * en / d)));
  return {first, second};
}

struct ClosedIdentityReport {
  std::array<double, 5> residuals{};
  bool negative_root = false;  // a real cube root of a negative value was taken
};

// Residuals of the five exact identities satisfied by the invariants of a
// closed polygon, each normalized by the magnitude of its largest term.
inline ClosedIdentityReport check_closed_identities(const std::vector<double>& v) {
  InvariantValues<double> iv = evaluate_invariants(v);
  long mm = iv.n / 2;
  double co = signed_cbrt(iv.On), ce = signed_cbrt(iv.En);
  ClosedIdentityReport rep;
  rep.negative_root = iv.On < 0 || iv.En < 0;

  auto residual = [](const std::vector<double>& lhs_terms, const std::vector<double>& rhs_terms) {
    double s = 0, scale = 0;
    for (double t : lhs_terms) {
      s += t;
      scale = std::max(scale, std::fabs(t));
    }
    for (double t : rhs_terms) {
      s -= t;
      scale = std::max(scale, std::fabs(t));
    }
    return scale > 0 ? std::fabs(s) / scale : std::fabs(s);
  };

  std::vector<double> o_terms, e_terms, jo_terms, je_terms, jjo_terms, jje_terms;
  for (long j = 0; j <= mm; ++j) {
    double dj = static_cast<double>(j);
    o_terms.push_back(iv.O[static_cast<std::size_t>(j)]);
    e_terms.push_back(iv.E[static_cast<std::size_t>(j)]);
    jo_terms.push_back(dj * iv.O[static_cast<std::size_t>(j)]);
    je_terms.push_back(dj * iv.E[static_cast<std::size_t>(j)]);
    jjo_terms.push_back(ce * dj * dj * iv.O[static_cast<std::size_t>(j)]);
    jje_terms.push_back(co * dj * dj * iv.E[static_cast<std::size_t>(j)]);
  }
  double nn = static_cast<double>(iv.n);
  rep.residuals[0] = residual(o_terms, {3 * ce * co * co});
  rep.residuals[1] = residual(e_terms, {3 * ce * ce * co});
  rep.residuals[2] = residual(jo_terms, {nn * ce * co * co});
  rep.residuals[3] = residual(je_terms, {nn * ce * ce * co});
  rep.residuals[4] = residual(jjo_terms, jje_terms);
  return rep;
}

}  // namespace pentagram
