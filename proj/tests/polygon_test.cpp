#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include <pentagram/closure.hpp>
#include <pentagram/polygon.hpp>
#include <pentagram/rng.hpp>

using namespace pentagram;
using VR = Vec3<Rational>;

TEST_CASE("random convex polygons are deterministic and convex") {
  for (long n : {5L, 6L, 7L, 8L}) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      auto p = random_convex_polygon(n, seed);
      auto q = random_convex_polygon(n, seed);
      CHECK(p.v == q.v);
      CHECK(is_convex(to_double_polygon(p)));
    }
  }
  auto a = random_convex_polygon(6, 1);
  auto b = random_convex_polygon(6, 2);
  CHECK(a.v != b.v);
}

TEST_CASE("is_convex") {
  ClosedPolygon<double> sq;
  sq.v = {{0.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, {1.0, 1.0, 1.0}, {0.0, 1.0, 1.0}};
  CHECK(is_convex(sq));
  ClosedPolygon<double> dent;
  dent.v = {{0.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, {0.4, 0.4, 1.0}, {1.0, 1.0, 1.0},
            {0.0, 1.0, 1.0}};
  CHECK_FALSE(is_convex(dent));
  ClosedPolygon<double> inf;
  inf.v = {{0.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, {1.0, 1.0, 0.0}, {0.0, 1.0, 1.0}};
  CHECK_THROWS_WITH_AS(is_convex(inf), "choose different affine patch", std::domain_error);
}

TEST_CASE("projective equivalence with and without relabeling") {
  auto p = random_convex_polygon(7, 55);
  std::array<VR, 4> frame{VR{Rational(1), Rational(0), Rational(0)},
                          VR{Rational(0), Rational(1), Rational(0)},
                          VR{Rational(0), Rational(0), Rational(1)},
                          VR{Rational(1), Rational(1), Rational(1)}};
  std::array<VR, 4> dst{VR{Rational(2), Rational(0), Rational(1)},
                        VR{Rational(1), Rational(3), Rational(1)},
                        VR{Rational(0), Rational(1), Rational(2)},
                        VR{Rational(4), Rational(3), Rational(5)}};
  auto m = map_from_correspondence(frame, dst);
  auto q = apply_map(m, p);
  CHECK(projectively_equivalent(p, q, false));

  ClosedPolygon<Rational> rot;
  for (long i = 0; i < 7; ++i) rot.v.push_back(q.at(i + 3));
  CHECK(projectively_equivalent(p, rot, true));
  CHECK_FALSE(projectively_equivalent(p, rot, false));

  ClosedPolygon<Rational> refl;
  for (long i = 0; i < 7; ++i) refl.v.push_back(q.at(2 - i));
  CHECK(projectively_equivalent(p, refl, true));

  auto other = random_convex_polygon(7, 56);
  CHECK_FALSE(projectively_equivalent(p, other, true));
}

TEST_CASE("equivalence rejects degenerate leading quadruples") {
  ClosedPolygon<Rational> degen;
  degen.v = {VR{Rational(0), Rational(0), Rational(1)}, VR{Rational(1), Rational(0), Rational(1)},
             VR{Rational(2), Rational(0), Rational(1)}, VR{Rational(3), Rational(0), Rational(1)},
             VR{Rational(0), Rational(1), Rational(1)}};
  CHECK_THROWS_WITH_AS(projectively_equivalent(degen, degen, false),
                       "equivalence test undefined", std::domain_error);
}

TEST_CASE("monodromy of a closed polygon ray is the identity") {
  auto p = random_convex_polygon(6, 77);
  TwistedRay<Rational> ray;
  ray.n = 6;
  for (long i = 0; i < 10; ++i) ray.vertices.push_back(p.at(i));
  auto m = monodromy_of_ray(ray);
  for (long i = 0; i < 6; ++i)
    CHECK(projectively_equal(apply_point(m, p.at(i)), p.at(i), 0.0));
  CHECK(trace(sl3_lift(to_double_matrix(m))) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("monodromy maps ray vertices forward by n") {
  long n = 7;
  std::vector<Rational> x;
  SplitMix64 rng(451);
  for (long i = 0; i < 2 * n; ++i) x.push_back(sample_unit(rng));
  auto verts = propagate_ray_geometric(x, n + 6);
  TwistedRay<Rational> ray{n, verts, {}};
  auto m = monodromy_of_ray(ray);
  for (std::size_t k = 0; k + n < verts.size(); ++k)
    CHECK(projectively_equal(apply_point(m, verts[k]), verts[k + n], 0.0));
}

TEST_CASE("monodromy needs n plus four vertices") {
  TwistedRay<Rational> ray;
  ray.n = 5;
  for (long i = 0; i < 8; ++i)
    ray.vertices.push_back(VR{Rational(i), Rational(i * i + 1), Rational(1)});
  CHECK_THROWS_AS(monodromy_of_ray(ray), std::invalid_argument);
}

TEST_CASE("monodromy rejects degenerate quadruples") {
  TwistedRay<Rational> ray;
  ray.n = 5;
  for (long i = 0; i < 9; ++i)
    ray.vertices.push_back(VR{Rational(i), Rational(2 * i), Rational(1)});  // collinear
  CHECK_THROWS_WITH_AS(monodromy_of_ray(ray), "monodromy undefined", std::domain_error);
}

TEST_CASE("affine normalization centers and scales") {
  auto p = to_double_polygon(random_convex_polygon(8, 5));
  for (auto& v : p.v) {
    v[0] = 3.0 * v[0] + 17.0;
    v[1] = 3.0 * v[1] - 4.0;
  }
  auto q = affine_normalize(p);
  double cx = 0, cy = 0, rms = 0;
  for (const auto& v : q.v) {
    CHECK(v[2] == 1.0);
    cx += v[0];
    cy += v[1];
    rms += v[0] * v[0] + v[1] * v[1];
  }
  cx /= static_cast<double>(q.v.size());
  cy /= static_cast<double>(q.v.size());
  rms = std::sqrt(rms / static_cast<double>(q.v.size()));
  CHECK(cx == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cy == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rms == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("regular polygons are convex and closed under the map") {
  for (long n : {5L, 6L, 9L}) {
    auto p = regular_polygon(n);
    CHECK(is_convex(p));
    CHECK(is_convex(pentagram_map_geometric(p)));
  }
}

TEST_CASE("affine whitening centers and removes anisotropy") {
  auto p = to_double_polygon(random_convex_polygon(8, 6));
  for (auto& v : p.v) {  // shear and stretch the frame
    double x = v[0], y = v[1];
    v[0] = 5.0 * x + 2.0 * y + 17.0;
    v[1] = 0.01 * y - 4.0;
  }
  auto q = affine_whiten(p);
  double n = static_cast<double>(q.v.size());
  double cx = 0, cy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& v : q.v) {
    CHECK(v[2] == 1.0);
    cx += v[0];
    cy += v[1];
  }
  cx /= n;
  cy /= n;
  for (const auto& v : q.v) {
    sxx += (v[0] - cx) * (v[0] - cx);
    sxy += (v[0] - cx) * (v[1] - cy);
    syy += (v[1] - cy) * (v[1] - cy);
  }
  CHECK(cx == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cy == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sxx / n == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sxy / n == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(syy / n == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(is_convex(q));

  ClosedPolygon<double> flat;
  for (int i = 0; i < 5; ++i)
    flat.v.push_back({static_cast<double>(i), 2.0 * static_cast<double>(i), 1.0});
  CHECK_THROWS_AS(affine_whiten(flat), std::domain_error);
}

TEST_CASE("whitened frames survive long orbits that flatten raw frames") {
  auto p = affine_whiten(to_double_polygon(random_convex_polygon(7, 20260816)));
  auto raw = p;
  bool raw_broke = false;
  try {
    for (int step = 0; step < 40 && !raw_broke; ++step) {
      raw = affine_normalize(pentagram_map_geometric(pentagram_map_geometric(raw)));
      raw_broke = !is_convex(raw);
    }
  } catch (const std::domain_error&) {
    raw_broke = true;
  }
  CHECK(raw_broke);  // isotropic rescaling alone loses the frame
  for (int step = 0; step < 40; ++step) {
    p = affine_whiten(pentagram_map_geometric(pentagram_map_geometric(p)));
    CHECK(is_convex(p));
  }
}
