#include <doctest.h>

#include <cmath>
#include <fstream>

#include <Eigen/LU>

#include "hessbound/geometry.hpp"
#include "hessbound/io.hpp"
#include "oracles/minkowski.hpp"
#include "support.hpp"

using namespace hessbound;
using testing_support::kPi;
using testing_support::rel;

namespace {

Polygon2D unit_square() { return Polygon2D::rectangle(1.0, 1.0); }
Polygon2D unit_triangle() { return Polygon2D({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}); }

double polygon_cot_sum(const Polygon2D& p) {
  // sum of cot(theta_i / 2) over interior angles
  double s = 0.0;
  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[(i + v.size() - 1) % v.size()] - v[i];
    const Vec2 b = v[(i + 1) % v.size()] - v[i];
    const double theta = std::acos(a.normalized().dot(b.normalized()));
    s += 1.0 / std::tan(0.5 * theta);
  }
  return s;
}

}  // namespace

TEST_CASE("quermass of the unit disk, square and cube") {
  const auto disk = quermass(Ball(2, 1.0));
  for (int i = 0; i <= 2; ++i) CHECK(disk[i] == doctest::Approx(kPi).epsilon(1e-15));

  const auto sq = quermass(unit_square());
  CHECK(sq[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sq[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sq[2] == kPi);

  const auto cube = quermass(Polytope3D::box(1, 1, 1));
  CHECK(cube[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(cube[1] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(cube[2] == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(cube[3] == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-15));
}

TEST_CASE("cube quermass agrees with a Steiner fit of Minkowski volumes") {
  // V(rho) - V = 3 W1 rho + 3 W2 rho^2 + W3 rho^3 at rho = 0.1, 0.2, 0.3
  Eigen::Matrix3d A;
  Eigen::Vector3d b;
  const double rhos[3] = {0.1, 0.2, 0.3};
  for (int i = 0; i < 3; ++i) {
    const double r = rhos[i];
    A.row(i) << 3 * r, 3 * r * r, r * r * r;
    b(i) = oracle::box_parallel_volume(0.5, 0.5, 0.5, r) - 1.0;
  }
  const Eigen::Vector3d w = A.fullPivLu().solve(b);
  const auto q = quermass(Polytope3D::box(1, 1, 1));
  CHECK(rel(q[1], w(0)) < 1e-9);
  CHECK(rel(q[2], w(1)) < 1e-9);
  CHECK(rel(q[3], w(2)) < 1e-9);

  // A non-cubic box exercises unequal edge classes.
  const auto box = Polytope3D::box(2.0, 1.0, 0.5);
  const auto qb = quermass(box);
  for (double r : rhos) {
    CHECK(rel(steiner_outer(box, r), oracle::box_parallel_volume(1.0, 0.5, 0.25, r)) < 1e-10);
  }
  CHECK(qb[0] == doctest::Approx(1.0));
}

TEST_CASE("degenerate bodies are rejected") {
  CHECK_THROWS_AS(Polygon2D({Vec2(0, 0), Vec2(1, 0), Vec2(2, 0)}), InputError);
  CHECK_THROWS_AS(Polygon2D({Vec2(0, 0), Vec2(0, 1), Vec2(1, 0)}), InputError);  // clockwise
  CHECK_THROWS_AS(Polytope3D::from_vertices({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 0)}),
                  InputError);
  CHECK_THROWS_AS(Ball(1, 1.0), InputError);
  CHECK_THROWS_AS(Ball(2, 0.0), InputError);
  // Clockwise input through the lenient constructor is reversed.
  CHECK(Polygon2D::from_vertices({Vec2(0, 0), Vec2(0, 1), Vec2(1, 0)}).area() == doctest::Approx(0.5));
}

TEST_CASE("af_check") {
  const auto disk = af_check(quermass(Ball(2, 1.0)));
  CHECK_FALSE(disk.violated);
  for (const auto& e : disk.entries) CHECK(std::abs(e.value) < 1e-14);

  const auto sq = af_check(quermass(unit_square()));
  REQUIRE(sq.entries.size() == 1);
  // 2/pi - pi^{-1/2}
  CHECK(sq.entries[0].value == doctest::Approx(0.0724301888198).epsilon(1e-11));
  CHECK_FALSE(sq.violated);

  const auto ball4 = af_check(quermass(Ball(4, 0.7)));
  CHECK(ball4.entries.size() == 6);
  CHECK(std::abs(ball4.min_value) < 1e-14);
}

TEST_CASE("equivalent ball radii") {
  const auto sq = quermass(unit_square());
  CHECK(equiv_ball_radius(sq, 0) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-15));
  CHECK(equiv_ball_radius(sq, 1) == doctest::Approx(2.0 / kPi).epsilon(1e-15));
  CHECK_THROWS_AS(equiv_ball_radius(sq, 2), InputError);
  for (int n = 2; n <= 5; ++n) {
    const auto b = quermass(Ball(n, 1.7));
    for (int i = 0; i < n; ++i) CHECK(equiv_ball_radius(b, i) == doctest::Approx(1.7).epsilon(1e-14));
  }
}

TEST_CASE("inradius") {
  CHECK(inradius(unit_square()) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(inradius(Ball(3, 2.0)) == 2.0);
  const auto tri = unit_triangle();
  CHECK(inradius(tri) == doctest::Approx(tri.area() / (0.5 * tri.perimeter())).epsilon(1e-13));
  CHECK(inradius(tri) == doctest::Approx((2.0 - std::sqrt(2.0)) / 2.0).epsilon(1e-13));
  CHECK(inradius(Polytope3D::box(1.0, 2.0, 3.0)) == doctest::Approx(0.5).epsilon(1e-13));
  // Chebyshev centre of a polygon is inside at the right distance.
  const auto poly = testing_support::corpus_polygon(3);
  const auto cb = chebyshev_ball(poly);
  double dmin = 1e300;
  for (const auto& h : poly.halfspaces()) dmin = std::min(dmin, -h.signed_distance(Vec2(cb.center)));
  CHECK(dmin == doctest::Approx(cb.radius).epsilon(1e-12));
}

TEST_CASE("inner parallel bodies") {
  const auto sq = std::get<Polygon2D>(inner_parallel(unit_square(), 0.25));
  CHECK(sq.perimeter() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sq.area() == doctest::Approx(0.25).epsilon(1e-14));

  const auto b = std::get<Ball>(inner_parallel(Ball(2, 1.0), 0.3));
  CHECK(b.radius == doctest::Approx(0.7).epsilon(1e-15));

  const auto tri = unit_triangle();
  const auto t1 = std::get<Polygon2D>(inner_parallel(tri, 0.1));
  CHECK(t1.size() == 3);
  CHECK(t1.perimeter() == doctest::Approx(tri.perimeter() - 2 * 0.1 * polygon_cot_sum(tri)).epsilon(1e-13));

  CHECK_THROWS_AS(inner_parallel(unit_square(), 0.5), InputError);
  CHECK_THROWS_AS(inner_parallel(Ball(2, 1.0), 1.2), InputError);

  const auto cube = std::get<Polytope3D>(inner_parallel(Polytope3D::box(1, 1, 1), 0.1));
  CHECK(cube.volume() == doctest::Approx(0.512).epsilon(1e-13));
  CHECK(cube.faces().size() == 6);
}

TEST_CASE("steiner_outer") {
  CHECK(steiner_outer(unit_square(), 1.0) == doctest::Approx(5.0 + kPi).epsilon(1e-15));
  CHECK(steiner_outer(Ball(2, 1.0), 1.0) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
  CHECK(steiner_outer(Polytope3D::box(1, 1, 1), 0.5) ==
        doctest::Approx(oracle::box_parallel_volume(0.5, 0.5, 0.5, 0.5)).epsilon(1e-11));
}

TEST_CASE("random_polygon is frozen and deterministic") {
  std::ifstream in(testing_support::data_path("random_polygon_seed1_n8.json"));
  REQUIRE(in);
  io::json j;
  in >> j;
  const auto golden = std::get<Polygon2D>(io::parse_body(j));
  const auto p = random_polygon(1, 8);
  REQUIRE(p.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK((p.vertices()[i] - golden.vertices()[i]).norm() < 1e-13);
  const auto q = random_polygon(1, 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(p.vertices()[i] == q.vertices()[i]);
  CHECK(p.area() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(random_polygon(1, 2), InputError);
  CHECK(random_polygon(2, 8).vertices()[0] != p.vertices()[0]);
}

TEST_CASE("property suite on seeded polygons") {
  for (int i = 0; i < 60; ++i) {
    CAPTURE(i);
    const auto poly = testing_support::corpus_polygon(i);
    const auto q = quermass(poly);
    // Steiner consistency
    for (double r : {0.05, 0.3, 1.0}) {
      CHECK(rel(steiner_outer(poly, r), q[0] + 2 * q[1] * r + q[2] * r * r) < 1e-10);
    }
    // Aleksandrov-Fenchel and isoperimetry
    CHECK_FALSE(af_check(q).violated);
    CHECK(q.perimeter() >= 2.0 * std::sqrt(kPi) * std::sqrt(q[0]) * (1 - 1e-14));
    CHECK(equiv_ball_radius(q, 0) <= equiv_ball_radius(q, 1));
    CHECK(q[2] == kPi);
    // Scaling
    const double s = 1.7;
    const auto qs = quermass(scaled(poly, s));
    for (int k = 0; k <= 2; ++k) CHECK(rel(qs[k], std::pow(s, 2 - k) * q[k]) < 1e-12);
    // Monotonicity along offsets
    const double r = inradius(poly);
    double prev_a = q[0], prev_p = q[1];
    for (double f : {0.2, 0.4, 0.6, 0.8, 0.95}) {
      const auto qt = quermass(inner_parallel(poly, f * r));
      CHECK(qt[0] < prev_a);
      CHECK(qt[1] < prev_p);
      prev_a = qt[0];
      prev_p = qt[1];
    }
  }
}

TEST_CASE("property suite on random polytopes") {
  for (unsigned seed = 1; seed <= 6; ++seed) {
    CAPTURE(seed);
    const auto p = testing_support::random_polytope(seed, 40);
    const auto q = quermass(p);
    CHECK_FALSE(af_check(q).violated);
    CHECK(q[3] == doctest::Approx(4.0 * kPi / 3.0));
    const auto chain = std::vector<double>{equiv_ball_radius(q, 0), equiv_ball_radius(q, 1), equiv_ball_radius(q, 2)};
    CHECK(chain[0] <= chain[1]);
    CHECK(chain[1] <= chain[2]);
    const auto qs = quermass(scaled(p, 0.6));
    for (int k = 0; k <= 3; ++k) CHECK(rel(qs[k], std::pow(0.6, 3 - k) * q[k]) < 1e-11);
    // isoperimetry: S >= 3 omega^{1/3} V^{2/3}
    CHECK(p.surface_area() >= 3.0 * std::cbrt(q.omega()) * std::pow(q[0], 2.0 / 3.0));
    // Steiner consistency of the curvature measure.
    for (double r : {0.1, 0.5}) {
      CHECK(rel(steiner_outer(p, r), q[0] + 3 * q[1] * r + 3 * q[2] * r * r + q[3] * r * r * r) < 1e-12);
    }
  }
}
