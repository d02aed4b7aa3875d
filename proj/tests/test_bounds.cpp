#include <doctest.h>

#include <cmath>
#include <random>

#include "hessbound/bounds.hpp"
#include "hessbound/hessian.hpp"
#include "oracles/bessel.hpp"
#include "support.hpp"

using namespace hessbound;
using testing_support::kPi;
using testing_support::rel;

TEST_CASE("closed form bound on simple bodies") {
  const auto sq = quermass(Polygon2D::rectangle(1, 1));
  CHECK(makai_bound(sq, 1) == doctest::Approx(48.0).epsilon(1e-14));
  CHECK(makai_bound(sq, 2) == doctest::Approx(1024.0).epsilon(1e-14));
  CHECK(makai_bound(quermass(Ball(2, 1.0)), 1) == doctest::Approx(12.0).epsilon(1e-14));
  // in the plane the k = 2 bound is 4 P^4 / A^4
  for (int i = 0; i < 10; ++i) {
    const auto q = quermass(testing_support::corpus_polygon(i));
    CHECK(rel(makai_bound(q, 2), 4 * std::pow(q.perimeter(), 4) / std::pow(q.volume(), 4)) < 1e-12);
  }
  CHECK_THROWS_AS(makai_bound(sq, 3), InputError);
}

TEST_CASE("stability bound") {
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= n; ++k) {
      const auto s = stability_bound(Ball(n, 0.8), k);
      CHECK(s.applicable);
      CHECK(std::abs(s.gap) < 1e-12);
      CHECK(rel(s.value, solve_ball_eigenvalue(n, k, 0.8).lambda) < 1e-6);
    }
  const auto sq = stability_bound(Polygon2D::rectangle(1, 1), 1);
  CHECK(sq.index == 1);
  CHECK(sq.radius == doctest::Approx(2 / kPi).epsilon(1e-14));
  CHECK(sq.gap == doctest::Approx(4 / kPi - 1).epsilon(1e-12));
  // C = 1 / ||v||_2^2 on the disk of radius 2/pi
  const double R = 2 / kPi;
  CHECK(rel(sq.c_omega, 1 / oracle::disk_l2_squared(R)) < 1e-7);
  CHECK(sq.product == doctest::Approx(0.7963).epsilon(1e-3));
  CHECK(sq.value == doctest::Approx(oracle::disk_lambda(R) / (1 - sq.product)).epsilon(1e-6));
  const auto sq2 = stability_bound(Polygon2D::rectangle(1, 1), 2);
  CHECK_FALSE(sq2.applicable);
  CHECK(sq2.product > 1.0);
}

TEST_CASE("lower bound") {
  const auto sq = faber_krahn_lower(Polygon2D::rectangle(1, 1), 1);
  CHECK(sq.value == doctest::Approx(kPi * 5.78318596294678).epsilon(1e-6));
  CHECK(sq.value == doctest::Approx(18.168).epsilon(1e-4));
  CHECK_FALSE(sq.conditional);
  CHECK(sq.index == 0);
  const auto mid = faber_krahn_lower(Polytope3D::box(1, 1, 1), 2);
  CHECK(mid.conditional);
  CHECK(mid.index == 1);
  const auto top = faber_krahn_lower(Polytope3D::box(1, 1, 1), 3);
  CHECK_FALSE(top.conditional);
  CHECK(top.index == 2);
}

TEST_CASE("inclusion chain") {
  const auto chain = inclusion_chain(quermass(Polytope3D::box(1, 2, 3)));
  REQUIRE(chain.radii.size() == 3);
  CHECK(chain.radii[0] <= chain.radii[1]);
  CHECK(chain.radii[1] <= chain.radii[2]);
  CHECK(chain.spread == doctest::Approx(chain.radii[2] - chain.radii[0]));
  CHECK(inclusion_chain(quermass(Ball(3, 1.0))).spread == doctest::Approx(0.0).epsilon(1e-14));
  // a vector violating the chain is reported
  const QuermassVector bad(2, Eigen::Vector3d(10.0, 1.0, kPi));
  CHECK_THROWS_AS(inclusion_chain(bad), NumericalError);
}

TEST_CASE("normalized Newton chain") {
  const auto v = newton_check({2, 1, 1}, 3);
  CHECK(v.k_convex);
  CHECK(v.chain_nonincreasing);
  REQUIRE(v.chain.size() == 3);
  CHECK(v.chain[0] == doctest::Approx(4.0 / 3.0));
  CHECK(v.chain[1] == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(v.chain[2] == doctest::Approx(std::cbrt(2.0)));
  CHECK_FALSE(newton_check({1, -3, 1}, 2).k_convex);
  // random k-convex samples
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-0.3, 2.0);
  int tested = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<double> eig(4);
    for (auto& e : eig) e = u(gen);
    const auto r = newton_check(eig, 3);
    if (!r.k_convex) continue;
    ++tested;
    CHECK(r.chain_nonincreasing);
  }
  CHECK(tested > 50);
}

TEST_CASE("report on the unit square") {
  const auto r = report(Polygon2D::rectangle(1, 1), 1);
  REQUIRE(r.faber_krahn.ok());
  REQUIRE(r.reference.ok());
  REQUIRE(r.web.ok());
  REQUIRE(r.makai.ok());
  REQUIRE(r.stability.ok());
  CHECK(r.surrogate);
  CHECK(r.reference.value->value == doctest::Approx(2 * kPi * kPi).epsilon(1e-5));
  CHECK(r.web.value->quotient < 24.0);
  CHECK(r.makai.value->value == doctest::Approx(48.0));
  CHECK(r.ordering.ok);
  CHECK(r.ordering.violations.empty());

  const auto r2 = report(Polygon2D::rectangle(1, 1), 2);
  CHECK_FALSE(r2.reference.ok());
  CHECK_FALSE(r2.reference_note.empty());
  CHECK(r2.ordering.ok);
}

TEST_CASE("report on balls") {
  for (int k = 1; k <= 3; ++k) {
    const auto r = report(Ball(3, 1.0), k);
    REQUIRE(r.reference.ok());
    CHECK_FALSE(r.surrogate);
    const double lam = r.reference.value->value;
    CHECK(rel(r.web.value->quotient, lam) < 1e-6);
    CHECK(rel(r.stability.value->value, lam) < 1e-6);
    CHECK(rel(r.faber_krahn.value->value, lam) < 1e-9);
    CHECK(r.ordering.ok);
  }
}

TEST_CASE("ordering detects a tampered entry") {
  auto r = report(Polygon2D::rectangle(1, 1), 1);
  r.makai.value->value = 1.0;
  const auto o = check_ordering(r);
  CHECK_FALSE(o.ok);
  CHECK_FALSE(o.violations.empty());
}

TEST_CASE("bounds degenerate along thin rectangles") {
  double prev_ratio = 0.0, prev_product = 0.0;
  for (double a : {1.0, 0.5, 0.25, 0.125}) {
    const auto body = std::get<Polygon2D>(scaled(Polygon2D::rectangle(1, a), 1 / std::sqrt(a)));
    const auto q = quermass(body);
    const auto st = stability_bound(q, 1);
    const double ratio = makai_bound(q, 1) / faber_krahn_lower(q, 1).value;
    CHECK(ratio > prev_ratio);
    CHECK(st.product > prev_product);
    prev_ratio = ratio;
    prev_product = st.product;
  }
}

TEST_CASE("default spacing") {
  CHECK(default_fd_spacing(Polygon2D::rectangle(1, 1)) == doctest::Approx(std::sqrt(2.0) / 128));
  CHECK(default_fd_spacing(Polygon2D::rectangle(8, 0.125)) == doctest::Approx(0.0625 / 16));
}
