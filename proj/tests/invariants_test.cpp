#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include <pentagram/admissible.hpp>
#include <pentagram/corners.hpp>
#include <pentagram/invariants.hpp>
#include <pentagram/polygon.hpp>
#include <pentagram/rng.hpp>

using namespace pentagram;

namespace {

std::vector<Rational> random_positive(long len, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Rational> x;
  for (long i = 0; i < len; ++i) x.push_back(sample_unit(rng));
  return x;
}

// Brute-force enumeration with its own compatibility rule, for cross-checking.
struct NaiveMono {
  std::vector<long> centers;  // triple centers
  std::vector<long> singles;
  int sign = 1;
};

long naive_cyc_dist(long a, long b, long m) {
  long d = ((a - b) % m + m) % m;
  return std::min(d, m - d);
}

bool naive_compatible(long m, bool ta, long ia, bool tb, long ib) {
  long d = naive_cyc_dist(ia, ib, m);
  if (ta && tb) return d != 2 && d != 4;
  if (!ta && !tb) return d != 2;
  return d > 3;
}

std::vector<NaiveMono> naive_enumerate(long n, long k, bool odd_singles) {
  long m = 2 * n;
  struct Cand {
    bool triple;
    long idx;
  };
  std::vector<Cand> cands;
  for (long i = 1; i <= m; ++i) {
    bool odd = (i % 2 == 1);
    if (odd == !odd_singles) cands.push_back({true, i});  // triple centers
    if (odd == odd_singles) cands.push_back({false, i});
  }
  std::vector<NaiveMono> out;
  std::vector<int> pick;
  std::function<void(std::size_t, long)> rec = [&](std::size_t at, long left) {
    if (left == 0) {
      NaiveMono mono;
      for (int c : pick) {
        if (cands[c].triple)
          mono.centers.push_back(cands[c].idx);
        else
          mono.singles.push_back(cands[c].idx);
      }
      mono.sign = mono.singles.size() % 2 == 0 ? 1 : -1;
      out.push_back(mono);
      return;
    }
    if (at >= cands.size()) return;
    for (std::size_t c = at; c < cands.size(); ++c) {
      bool ok = true;
      for (int p : pick)
        if (!naive_compatible(m, cands[p].triple, cands[p].idx, cands[c].triple,
                              cands[c].idx)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      pick.push_back(static_cast<int>(c));
      rec(c + 1, left - 1);
      pick.pop_back();
    }
  };
  rec(0, k);
  return out;
}

using Canon = std::set<std::pair<std::vector<long>, std::vector<long>>>;

Canon canon_naive(const std::vector<NaiveMono>& ms) {
  Canon s;
  for (auto m : ms) {
    std::sort(m.centers.begin(), m.centers.end());
    std::sort(m.singles.begin(), m.singles.end());
    s.insert({m.centers, m.singles});
  }
  return s;
}

Canon canon_lib(const std::vector<AdmissibleMonomial>& ms) {
  Canon s;
  for (const auto& m : ms) s.insert({m.triple_centers, m.single_indices});
  return s;
}

}  // namespace

TEST_CASE("admissible enumeration matches brute force") {
  for (long n : {5L, 6L, 7L}) {
    for (long k = 0; k <= n / 2; ++k) {
      for (auto parity : {InvariantParity::O, InvariantParity::E}) {
        const auto& lib = enumerate_admissible(n, k, parity);
        auto naive = naive_enumerate(n, k, parity == InvariantParity::O);
        CHECK(lib.size() == naive.size());
        CHECK(canon_lib(lib) == canon_naive(naive));
        for (const auto& m : lib)
          CHECK(m.sign == (m.single_indices.size() % 2 == 0 ? 1 : -1));
      }
    }
  }
}

TEST_CASE("admissible factors expand triples correctly") {
  const auto& lib = enumerate_admissible(5, 2, InvariantParity::O);
  for (const auto& m : lib) {
    CHECK(m.factors.size() == 3 * m.triple_centers.size() + m.single_indices.size());
    for (long c : m.triple_centers) {
      CHECK(c % 2 == 0);
      CHECK(std::count(m.factors.begin(), m.factors.end(), c) >= 1);
    }
  }
}

TEST_CASE("enumeration input validation") {
  CHECK_THROWS_AS(enumerate_admissible(4, 1, InvariantParity::O), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_admissible(7, 4, InvariantParity::O), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_admissible(7, -1, InvariantParity::E), std::invalid_argument);
  ElementaryMonomial s1{MonomialKind::Single, 1}, s3{MonomialKind::Single, 3};
  ElementaryMonomial s4{MonomialKind::Single, 4}, t2{MonomialKind::Triple, 2};
  ElementaryMonomial t4{MonomialKind::Triple, 4}, t8{MonomialKind::Triple, 8};
  CHECK_THROWS_AS(brackets_vanish(s1, s3, 2), std::invalid_argument);
  CHECK_FALSE(brackets_vanish(s1, s3, 7));  // singles at distance 2
  CHECK(brackets_vanish(s1, s4, 7));        // singles at distance 3
  CHECK_FALSE(brackets_vanish(t2, t4, 7));  // triples at distance 2
  CHECK_FALSE(brackets_vanish(t4, t8, 7));  // triples at distance 4
  CHECK(brackets_vanish(t2, t8, 7));        // triples at distance 6
  CHECK_FALSE(brackets_vanish(s1, t2, 7));  // mixed at distance 1
  CHECK_FALSE(brackets_vanish(s1, t4, 7));  // mixed at distance 3
  CHECK(brackets_vanish(s1, ElementaryMonomial{MonomialKind::Triple, 6}, 7));
}

TEST_CASE("weight-one invariants written out") {
  auto x = random_positive(10, 9001);
  Rational o1;
  for (long i = 2; i <= 10; i += 2) {
    Rational t = cyclic_at(x, i - 1) * cyclic_at(x, i) * cyclic_at(x, i + 1);
    o1 += t;
  }
  for (long j = 1; j <= 9; j += 2) o1 -= cyclic_at(x, j);
  CHECK(evaluate_admissible_sum(5, 1, InvariantParity::O, x) == o1);

  Rational e1;
  for (long i = 1; i <= 9; i += 2) e1 += cyclic_at(x, i - 1) * cyclic_at(x, i) * cyclic_at(x, i + 1);
  for (long j = 2; j <= 10; j += 2) e1 -= cyclic_at(x, j);
  CHECK(evaluate_admissible_sum(5, 1, InvariantParity::E, x) == e1);
}

TEST_CASE("all invariants survive the pentagram map exactly") {
  for (long n : {5L, 6L, 7L}) {
    auto x = random_positive(2 * n, 700 + n);
    auto before = evaluate_invariants(x);
    auto after = evaluate_invariants(pentagram_map_coords(x));
    CHECK(before.O == after.O);
    CHECK(before.E == after.E);
    CHECK(before.On == after.On);
    CHECK(before.En == after.En);
    if (n % 2 == 0) {
      CHECK(before.half_O == after.half_O);
      CHECK(before.half_E == after.half_E);
    }
  }
}

TEST_CASE("scaling weights") {
  long n = 6;
  auto x = random_positive(2 * n, 42);
  Rational s(3);
  auto xs = rescale(x, s);
  for (long k = 0; k <= n / 2; ++k) {
    CHECK(evaluate_admissible_sum(n, k, InvariantParity::O, xs) ==
          rational_pow(s, k) * evaluate_admissible_sum(n, k, InvariantParity::O, x));
    CHECK(evaluate_admissible_sum(n, k, InvariantParity::E, xs) ==
          rational_pow(s, -k) * evaluate_admissible_sum(n, k, InvariantParity::E, x));
  }
  CHECK(coordinate_product(InvariantParity::O, xs) ==
        rational_pow(s, n) * coordinate_product(InvariantParity::O, x));
  CHECK(coordinate_product(InvariantParity::E, xs) ==
        rational_pow(s, -n) * coordinate_product(InvariantParity::E, x));
}

TEST_CASE("invariants are blind to relabeling the flags by one vertex") {
  long n = 6;
  auto x = random_positive(2 * n, 43);
  auto y = cyclic_shift(x, 2);
  auto a = evaluate_invariants(x);
  auto b = evaluate_invariants(y);
  CHECK(a.O == b.O);
  CHECK(a.E == b.E);
  CHECK(a.On == b.On);
  CHECK(a.En == b.En);
}

TEST_CASE("half-weight casimirs assemble the middle invariant") {
  for (long n : {6L, 8L}) {
    auto x = random_positive(2 * n, 550 + n);
    auto po = half_casimir_products(InvariantParity::O, x);
    auto pe = half_casimir_products(InvariantParity::E, x);
    Rational sgn = (n / 2) % 2 == 0 ? Rational(1) : Rational(-1);
    CHECK(evaluate_admissible_sum(n, n / 2, InvariantParity::O, x) == sgn * (po[0] + po[1]));
    CHECK(evaluate_admissible_sum(n, n / 2, InvariantParity::E, x) == sgn * (pe[0] + pe[1]));
    CHECK(po[0] * po[1] * pe[0] * pe[1] ==
          coordinate_product(InvariantParity::O, x) *
              coordinate_product(InvariantParity::E, x));
  }
}

TEST_CASE("evaluate_invariants layout") {
  auto x = random_positive(14, 77);
  auto iv = evaluate_invariants(x);
  CHECK(iv.n == 7);
  CHECK(iv.O.size() == 4);
  CHECK(iv.E.size() == 4);
  CHECK(iv.O[0] == Rational(1));
  CHECK(iv.E[0] == Rational(1));
  CHECK_FALSE(iv.has_half_casimirs);
  CHECK(evaluate_invariants(random_positive(12, 78)).has_half_casimirs);
  CHECK_THROWS_AS(evaluate_invariants(random_positive(9, 79)), std::invalid_argument);
}

TEST_CASE("monodromy traces reproduce the invariant sums") {
  for (long n : {7L, 8L}) {
    auto xr = random_positive(2 * n, 880 + n);
    std::vector<double> x;
    for (const auto& t : xr) x.push_back(to_double(t));
    auto iv = evaluate_invariants(x);
    double so = 0, se = 0;
    for (double t : iv.O) so += t;
    for (double t : iv.E) se += t;
    auto tr = trace_invariants(x);
    CHECK(std::fabs(tr.first - so) / std::fabs(so) < 1e-9);
    CHECK(std::fabs(tr.second - se) / std::fabs(se) < 1e-9);
  }
}

TEST_CASE("closed polygons satisfy the trace identities") {
  for (long n : {7L, 8L}) {
    auto p = random_convex_polygon(n, 3000 + n);
    auto xr = extract_corners(p);
    std::vector<double> x;
    for (const auto& t : xr) x.push_back(to_double(t));
    auto report = check_closed_identities(x);
    for (double r : report.residuals) CHECK(r < 1e-9);
    CHECK_FALSE(report.negative_root);

    auto iv = evaluate_invariants(x);
    double so = 0;
    for (double t : iv.O) so += t;
    double rhs = 3.0 * std::cbrt(iv.En) * std::cbrt(iv.On) * std::cbrt(iv.On);
    CHECK(so == doctest::Approx(rhs).epsilon(1e-10));
  }
}
