#pragma once
// Seedable, portable random number generation (splitmix64) and the rational
// samplers used by tests and the CLI. All samples are of the form k/65536 so
// exact runs are reproducible across platforms.

#include <cstdint>

#include "pentagram/field.hpp"

namespace pentagram {

struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), rejection-sampled to avoid modulo bias.
  uint64_t below(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      uint64_t r = next();
      if (r < limit) return r % bound;
    }
  }

  int64_t in_range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }
};

constexpr int64_t kSampleDenominator = 65536;

// Uniform rational in (0, 1].
inline Rational sample_unit(SplitMix64& g) {
  return Rational(g.in_range(1, kSampleDenominator), kSampleDenominator);
}

// Uniform nonzero rational in [-1, 1].
inline Rational sample_signed(SplitMix64& g) {
  int64_t k = 0;
  while (k == 0) k = g.in_range(-kSampleDenominator, kSampleDenominator);
  return Rational(k, kSampleDenominator);
}

}  // namespace pentagram
