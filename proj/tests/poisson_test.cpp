#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include <pentagram/invariants.hpp>
#include <pentagram/poisson.hpp>
#include <pentagram/rng.hpp>

using namespace pentagram;

namespace {

std::vector<Rational> random_positive(long len, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Rational> x;
  for (long i = 0; i < len; ++i) x.push_back(sample_unit(rng));
  return x;
}

DiffFn<Rational> coord(long i) { return coordinate_fn<Rational>(i); }

}  // namespace

TEST_CASE("coordinate brackets at the all-ones point") {
  std::vector<Rational> ones(10, Rational(1));
  CHECK(bracket(coord(1), coord(3), ones) == Rational(-1));
  CHECK(bracket(coord(3), coord(1), ones) == Rational(1));
  CHECK(bracket(coord(2), coord(4), ones) == Rational(1));
  CHECK(bracket(coord(1), coord(5), ones) == Rational(0));
  CHECK(bracket(coord(1), coord(2), ones) == Rational(0));
  CHECK(bracket(coord(9), coord(1), ones) == Rational(-1));
}

TEST_CASE("coordinate brackets scale with the coordinates") {
  std::vector<Rational> x;
  for (long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) x.push_back(Rational(p));
  CHECK(bracket(coord(1), coord(3), x) == Rational(-10));   // -x1 x3
  CHECK(bracket(coord(2), coord(4), x) == Rational(21));    // +x2 x4
  CHECK(bracket(coord(10), coord(2), x) == Rational(87));   // {x10, x2} = x10 x2
}

TEST_CASE("hamiltonian field of a coordinate function") {
  std::vector<Rational> ones(10, Rational(1));
  auto field = hamiltonian_field(coord(1), ones);
  REQUIRE(field.size() == 10);
  for (long j = 1; j <= 10; ++j) {
    Rational expect(0);
    if (j == 3) expect = Rational(-1);
    if (j == 9) expect = Rational(1);
    CHECK(field[static_cast<std::size_t>(j - 1)] == expect);
  }
}

TEST_CASE("hamiltonian field pairs with gradients to give the bracket") {
  long n = 6;
  auto x = random_positive(2 * n, 31337);
  for (auto [f, g] : {std::pair{invariant_fn<Rational>(n, 1, InvariantParity::O),
                                invariant_fn<Rational>(n, 1, InvariantParity::E)},
                      std::pair{coord(2), invariant_fn<Rational>(n, 2, InvariantParity::O)}}) {
    auto xf = hamiltonian_field(f, x);
    auto jg = g(jet_seed(x));
    Rational acc(0);
    for (std::size_t j = 0; j < xf.size(); ++j) acc += jg.d[j] * xf[j];
    CHECK(acc == bracket(f, g, x));
  }
}

TEST_CASE("casimirs generate no motion") {
  for (long n : {5L, 6L, 7L, 8L}) {
    auto x = random_positive(2 * n, 600 + n);
    for (auto parity : {InvariantParity::O, InvariantParity::E}) {
      auto field = hamiltonian_field(casimir_fn<Rational>(parity), x);
      for (const auto& c : field) CHECK(c == Rational(0));
    }
    if (n % 2 == 0) {
      for (auto parity : {InvariantParity::O, InvariantParity::E}) {
        for (int which : {0, 1}) {
          auto field = hamiltonian_field(half_casimir_product_fn<Rational>(parity, which), x);
          for (const auto& c : field) CHECK(c == Rational(0));
        }
        auto field = hamiltonian_field(half_casimir_sum_fn<Rational>(parity), x);
        for (const auto& c : field) CHECK(c == Rational(0));
      }
    }
  }
}

TEST_CASE("invariants commute pairwise at desk scale") {
  long n = 5;
  auto x = random_positive(2 * n, 999);
  std::vector<DiffFn<Rational>> fs;
  for (long k = 1; k <= n / 2; ++k) {
    fs.push_back(invariant_fn<Rational>(n, k, InvariantParity::O));
    fs.push_back(invariant_fn<Rational>(n, k, InvariantParity::E));
  }
  fs.push_back(casimir_fn<Rational>(InvariantParity::O));
  fs.push_back(casimir_fn<Rational>(InvariantParity::E));
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j)
      CHECK(bracket(fs[i], fs[j], x) == Rational(0));
}

TEST_CASE("the map preserves the bracket") {
  for (long n : {5L, 6L}) {
    auto x = random_positive(2 * n, 5500 + n);
    auto report = verify_map_preserves_bracket(x);
    CHECK(report.all_zero);
    CHECK(report.violations == 0);
  }
}

TEST_CASE("tensor rank counts independent directions") {
  CHECK(tensor_rank(5) == 8);
  CHECK(tensor_rank(6) == 8);
  CHECK(tensor_rank(7) == 12);
  CHECK(tensor_rank(8) == 12);
  CHECK(tensor_rank(9) == 16);
  CHECK(tensor_rank(12) == 20);
  CHECK_THROWS_AS(tensor_rank(4), std::invalid_argument);
}

TEST_CASE("bracket respects antisymmetry and Leibniz on samples") {
  long n = 5;
  auto x = random_positive(2 * n, 2468);
  auto f = invariant_fn<Rational>(n, 1, InvariantParity::O);
  auto g = invariant_fn<Rational>(n, 2, InvariantParity::E);
  CHECK(bracket(f, g, x) == -bracket(g, f, x));

  // {fg, h} = f{g, h} + g{f, h} at the sample point
  auto h = coord(4);
  DiffFn<Rational> fg = [f, g](const std::vector<Jet<Rational>>& in) {
    return f(in) * g(in);
  };
  Rational fv = jet_value(f(jet_seed(x)));
  Rational gv = jet_value(g(jet_seed(x)));
  CHECK(bracket(fg, h, x) == fv * bracket(g, h, x) + gv * bracket(f, h, x));
}
