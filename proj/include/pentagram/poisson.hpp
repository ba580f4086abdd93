#pragma once
// The invariant Poisson structure on the 2n corner coordinates: only
// next-nearest neighbors bracket nontrivially, {x_i, x_{i+2}} = (-1)^i
// x_i x_{i+2}. Brackets of arbitrary differentiable functions are assembled
// from jet gradients; the tensor rank comes from the constant skew form in
// logarithmic coordinates.

#include <cmath>
#include <vector>

#include "pentagram/corners.hpp"
#include "pentagram/field.hpp"
#include "pentagram/jet.hpp"
#include "pentagram/matrix.hpp"

namespace pentagram {

namespace detail {

// Gradient component accessor tolerating constant jets.
template <class F>
F grad_at(const Jet<F>& j, std::size_t i) {
  return j.d.empty() ? F(0) : j.d[i];
}

// Bracket of two functions given their gradients at the point.
template <class F>
F bracket_from_gradients(const std::vector<F>& at, const Jet<F>& jf, const Jet<F>& jg) {
  long m = static_cast<long>(at.size());
  F acc(0);
  for (long i = 1; i <= m; ++i) {
    std::size_t i0 = static_cast<std::size_t>(i - 1);
    std::size_t i2 = static_cast<std::size_t>((i + 1) % m);  // 0-based slot of x_{i+2}
    F term = at[i0] * at[i2] *
             (grad_at(jf, i0) * grad_at(jg, i2) - grad_at(jf, i2) * grad_at(jg, i0));
    acc = (i % 2 == 0) ? F(acc + term) : F(acc - term);
  }
  return acc;
}

}  // namespace detail

template <class F>
F bracket(const DiffFn<F>& f, const DiffFn<F>& g, const std::vector<F>& at) {
  std::vector<Jet<F>> seeds = jet_seed(at);
  return detail::bracket_from_gradients(at, f(seeds), g(seeds));
}

// Component j of the field is bracket(f, x_j): the field satisfies
// X_f(g) = bracket(f, g) for every differentiable g.
template <class F>
std::vector<F> hamiltonian_field(const DiffFn<F>& f, const std::vector<F>& at) {
  std::vector<Jet<F>> seeds = jet_seed(at);
  Jet<F> jf = f(seeds);
  long m = static_cast<long>(at.size());
  std::vector<F> field(at.size());
  for (long j = 1; j <= m; ++j) {
    std::size_t j0 = static_cast<std::size_t>(j - 1);
    std::size_t jm = static_cast<std::size_t>(((j - 3) % m + m) % m);  // x_{j-2}
    std::size_t jp = static_cast<std::size_t>((j + 1) % m);            // x_{j+2}
    F term = at[j0] * (at[jm] * detail::grad_at(jf, jm) - at[jp] * detail::grad_at(jf, jp));
    field[j0] = (j % 2 == 0) ? term : -term;
  }
  return field;
}

// Rank of the 2n x 2n skew form with entries (-1)^i at the cyclic pairs
// (i, i+2): 2n-2 for odd n, 2n-4 for even n.
inline long tensor_rank(long n) {
  if (n < 5) throw std::invalid_argument("tensor_rank requires n >= 5");
  long m = 2 * n;
  RationalMatrix j(m, m);
  for (long i = 1; i <= m; ++i) {
    long i2 = i + 2 > m ? i + 2 - m : i + 2;
    int s = i % 2 == 0 ? 1 : -1;
    j.at(i - 1, i2 - 1) += s;
    j.at(i2 - 1, i - 1) -= s;
  }
  return rank(j);
}

template <class F>
struct BracketPreservationReport {
  long n = 0;
  bool all_zero = false;
  long violations = 0;
  double max_abs = 0;
};

// Compares the bracket of pulled-back coordinate pairs with the bracket
// evaluated at the image point, over all coordinate pairs. Exact fields
// report a hard zero/nonzero count.
template <class F>
BracketPreservationReport<F> verify_map_preserves_bracket(const std::vector<F>& at) {
  long m = static_cast<long>(at.size());
  BracketPreservationReport<F> rep;
  rep.n = m / 2;
  rep.all_zero = true;
  std::vector<Jet<F>> ys = pentagram_map_coords(jet_seed(at));
  std::vector<F> yv(at.size());
  for (std::size_t k = 0; k < ys.size(); ++k) yv[k] = ys[k].v;
  for (long i = 1; i <= m; ++i) {
    for (long j = i + 1; j <= m; ++j) {
      std::size_t i0 = static_cast<std::size_t>(i - 1), j0 = static_cast<std::size_t>(j - 1);
      F lhs = detail::bracket_from_gradients(at, ys[i0], ys[j0]);
      F rhs(0);
      if (j - i == 2) rhs = F((i % 2 == 0 ? F(1) : F(-1)) * yv[i0] * yv[j0]);
      if (j - i == m - 2) rhs = F((j % 2 == 0 ? F(-1) : F(1)) * yv[j0] * yv[i0]);
      F res = lhs - rhs;
      double mag = std::fabs(to_double(res));
      if (!(res == F(0))) {
        rep.all_zero = false;
        ++rep.violations;
      }
      if (mag > rep.max_abs) rep.max_abs = mag;
    }
  }
  return rep;
}

}  // namespace pentagram
