#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include <pentagram/geom.hpp>
#include <pentagram/jet.hpp>

using namespace pentagram;
using VR = Vec3<Rational>;
using VD = Vec3<double>;

namespace {
const VR kA{Rational(0), Rational(0), Rational(1)};
const VR kB{Rational(1), Rational(0), Rational(1)};
const VR kC{Rational(2), Rational(0), Rational(1)};
const VR kD{Rational(3), Rational(0), Rational(1)};
}  // namespace

TEST_CASE("join and meet") {
  VR l = join(kA, kB);
  CHECK(projectively_equal(l, VR{Rational(0), Rational(1), Rational(0)}, 0.0));
  VR p = meet(join(kA, VR{Rational(1), Rational(1), Rational(1)}),
              join(kB, VR{Rational(0), Rational(1), Rational(1)}));
  CHECK(projectively_equal(p, VR{Rational(1), Rational(1), Rational(2)}, 0.0));
  CHECK_THROWS_WITH_AS(join(kA, kA), "degenerate join/meet", std::domain_error);
  VR l2 = join(kA, kC);
  CHECK_THROWS_WITH_AS(meet(l, l2), "degenerate join/meet", std::domain_error);
}

TEST_CASE("inverse cross ratio on collinear points") {
  CHECK(inverse_cross_ratio(kA, kB, kC, kD) == Rational(1, 4));
  CHECK(inverse_cross_ratio_affine(Rational(0), Rational(1), Rational(2), Rational(3)) ==
        Rational(1, 4));
  CHECK(inverse_cross_ratio(kC, kB, kA, kD) ==
        inverse_cross_ratio_affine(Rational(2), Rational(1), Rational(0), Rational(3)));
}

TEST_CASE("inverse cross ratio is projectively invariant") {
  Mat3<Rational> m;
  long e[3][3] = {{2, 1, 0}, {-1, 3, 1}, {0, 1, 5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.a[i][j] = Rational(e[i][j]);
  REQUIRE(det(m) != Rational(0));
  CHECK(inverse_cross_ratio(apply_point(m, kA), apply_point(m, kB), apply_point(m, kC),
                            apply_point(m, kD)) == Rational(1, 4));
}

TEST_CASE("inverse cross ratio degeneracies") {
  CHECK_THROWS_WITH_AS(inverse_cross_ratio(kA, kB, kA, kD), "cross ratio undefined",
                       std::domain_error);
  CHECK_THROWS_WITH_AS(inverse_cross_ratio(kA, kA, kA, kA), "indeterminate, perturb input",
                       std::domain_error);
}

TEST_CASE("line coordinates and cross ratio solves") {
  VR x{Rational(3) * kA[0] + Rational(5) * kB[0], Rational(3) * kA[1] + Rational(5) * kB[1],
       Rational(3) * kA[2] + Rational(5) * kB[2]};
  auto ab = line_coordinates(kA, kB, x);
  CHECK(ab.first * Rational(5) == ab.second * Rational(3));

  Rational chi(2, 7);
  VR d = solve_fourth_point(kA, kB, kC, chi, kA, kB);
  CHECK(inverse_cross_ratio(kA, kB, kC, d) == chi);
  VR a = solve_first_point(kB, kC, kD, chi, kB, kD);
  CHECK(inverse_cross_ratio(a, kB, kC, kD) == chi);
}

TEST_CASE("map from correspondence") {
  std::array<VR, 4> frame{VR{Rational(1), Rational(0), Rational(0)},
                          VR{Rational(0), Rational(1), Rational(0)},
                          VR{Rational(0), Rational(0), Rational(1)},
                          VR{Rational(1), Rational(1), Rational(1)}};
  std::array<VR, 4> dst{VR{Rational(1), Rational(2), Rational(1)},
                        VR{Rational(0), Rational(1), Rational(1)},
                        VR{Rational(1), Rational(0), Rational(3)},
                        VR{Rational(2), Rational(5), Rational(7)}};
  Mat3<Rational> id = map_from_correspondence(frame, frame);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(id.a[i][j] == Rational(i == j ? 1 : 0));

  Mat3<Rational> m = map_from_correspondence(frame, dst);
  for (int k = 0; k < 4; ++k)
    CHECK(projectively_equal(apply_point(m, frame[k]), dst[k], 0.0));

  std::array<VR, 4> degen{kA, kB, kC, kD};  // collinear
  CHECK_THROWS_WITH_AS(map_from_correspondence(degen, dst), "degenerate correspondence",
                       std::domain_error);
}

TEST_CASE("lines transform by inverse transpose") {
  std::array<VR, 4> frame{VR{Rational(1), Rational(0), Rational(0)},
                          VR{Rational(0), Rational(1), Rational(0)},
                          VR{Rational(0), Rational(0), Rational(1)},
                          VR{Rational(1), Rational(1), Rational(1)}};
  std::array<VR, 4> dst{VR{Rational(2), Rational(1), Rational(1)},
                        VR{Rational(1), Rational(3), Rational(1)},
                        VR{Rational(1), Rational(1), Rational(4)},
                        VR{Rational(5), Rational(6), Rational(7)}};
  Mat3<Rational> m = map_from_correspondence(frame, dst);
  VR p{Rational(2), Rational(-1), Rational(3)};
  VR q{Rational(1), Rational(4), Rational(-2)};
  VR image_line = apply_to_line(m, join(p, q));
  CHECK(projectively_equal(image_line, join(apply_point(m, p), apply_point(m, q)), 0.0));
}

TEST_CASE("sl3 lift") {
  Mat3<Rational> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.a[i][j] = Rational(0);
  m.a[0][0] = Rational(1);
  m.a[1][1] = Rational(8);
  m.a[2][2] = Rational(27);
  Mat3<Rational> lift = sl3_lift(m);
  CHECK(det(lift) == Rational(1));
  CHECK(trace(lift) == Rational(1 + 8 + 27, 6));

  m.a[2][2] = Rational(2);  // det 16, not a perfect cube
  CHECK_THROWS_WITH_AS(sl3_lift(m), "lift requires float field", std::domain_error);

  Mat3<double> md;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) md.a[i][j] = (i == j) ? 2.0 * (i + 1) : 0.25;
  Mat3<double> liftd = sl3_lift(md);
  CHECK(det(liftd) == doctest::Approx(1.0).epsilon(1e-12));

  Mat3<double> sing;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) sing.a[i][j] = 1.0;
  CHECK_THROWS_WITH_AS(sl3_lift(sing), "singular projective map", std::domain_error);
}

TEST_CASE("normalize triple") {
  VR v{Rational(2), Rational(-6), Rational(3)};
  VR w = normalize_triple(v);
  CHECK(w[1] == Rational(1));
  CHECK(w[0] == Rational(-1, 3));
  CHECK_THROWS_AS(normalize_triple(VR{Rational(0), Rational(0), Rational(0)}),
                  std::domain_error);
}

TEST_CASE("projective equality tolerances") {
  VD a{1.0, 2.0, 3.0};
  VD b{2.0, 4.0, 6.0 + 1e-13};
  CHECK(projectively_equal(a, b, 1e-9));
  VD c{2.0, 4.0, 6.1};
  CHECK_FALSE(projectively_equal(a, c, 1e-9));
}

TEST_CASE("geometry works on jets") {
  std::vector<Rational> at{Rational(2), Rational(3)};
  auto xs = jet_seed(at);
  using J = Jet<Rational>;
  Vec3<J> p{xs[0], J(Rational(0)), J(Rational(1))};
  Vec3<J> q{J(Rational(0)), xs[1], J(Rational(1))};
  Vec3<J> l = join(p, q);
  // line x/2 + y/3 = 1 scaled: (-3, -2, 6) direction, derivatives flow through
  CHECK(jet_value(l[0]) * Rational(2) == -jet_value(l[2]) + Rational(0));
  CHECK(l[2].v == xs[0].v * xs[1].v);
  CHECK(l[2].d[0] == Rational(3));
  CHECK(l[2].d[1] == Rational(2));
}
