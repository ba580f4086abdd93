#pragma once
// Dense rational matrices and exact rank by Gaussian elimination.

#include <stdexcept>
#include <vector>

#include "pentagram/field.hpp"

namespace pentagram {

struct RationalMatrix {
  long rows = 0, cols = 0;
  std::vector<Rational> a;

  RationalMatrix() = default;
  RationalMatrix(long r, long c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c)) {
    if (r < 0 || c < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
  }

  Rational& at(long r, long c) { return a[static_cast<std::size_t>(r * cols + c)]; }
  const Rational& at(long r, long c) const { return a[static_cast<std::size_t>(r * cols + c)]; }
};

inline long rank(const RationalMatrix& m) {
  RationalMatrix w = m;
  long r = 0;
  for (long c = 0; c < w.cols && r < w.rows; ++c) {
    long pivot = -1;
    for (long i = r; i < w.rows; ++i)
      if (w.at(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (long j = c; j < w.cols; ++j) std::swap(w.at(pivot, j), w.at(r, j));
    for (long i = r + 1; i < w.rows; ++i) {
      if (w.at(i, c) == 0) continue;
      Rational f = w.at(i, c) / w.at(r, c);
      w.at(i, c) = 0;
      for (long j = c + 1; j < w.cols; ++j) w.at(i, j) -= f * w.at(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace pentagram
