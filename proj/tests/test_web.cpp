#include <doctest.h>

#include <cmath>
#include <memory>

#include "hessbound/bounds.hpp"
#include "hessbound/pderef.hpp"
#include "hessbound/web.hpp"
#include "oracles/bessel.hpp"
#include "support.hpp"

using namespace hessbound;
using testing_support::kPi;
using testing_support::rel;

TEST_CASE("linear profile on the unit square and disk") {
  const auto sq = sweep(Polygon2D::rectangle(1, 1));
  const auto lin = WebProfile::power(1.0);
  // int d^2 over the square = 1/24
  CHECK(rayleigh_denominator(lin, sq, 1) == doctest::Approx(1.0 / 24).epsilon(1e-10));
  CHECK(rayleigh_numerator(lin, sq, 1) == doctest::Approx(1.0).epsilon(1e-10));
  const auto q = rayleigh_quotient(lin, sq, 1);
  CHECK(q.quotient == doctest::Approx(24.0).epsilon(1e-10));
  CHECK(q.provenance.find("upper bound modulo smoothing of d") != std::string::npos);

  const auto disk = sweep(Ball(2, 1.0));
  // int (1-r)^2 over the unit disk = pi/6
  CHECK(rayleigh_denominator(lin, disk, 1) == doctest::Approx(kPi / 6).epsilon(1e-10));
  // det D^2 d vanishes off the center; the cone tip carries mass pi
  CHECK(rayleigh_numerator(lin, disk, 2) == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(numerator_coefficient(2, 2) == 1.0);
  CHECK(numerator_coefficient(3, 2) == 3.0);
  CHECK(numerator_coefficient(4, 2) == 6.0);
}

TEST_CASE("profile kinds") {
  CHECK_THROWS_AS(WebProfile::power(0.5), InputError);
  CHECK_THROWS_AS(WebProfile::tabulated({0, 1, 2}, {0, 2, 1}), InputError);
  CHECK_THROWS_AS(WebProfile::tabulated({0.1, 1}, {0, 1}), InputError);
  const auto t = WebProfile::tabulated({0, 0.5, 1}, {0, 0.5, 1});
  CHECK(t.value(0.25) == doctest::Approx(0.25));
  CHECK(t.derivative(0.75) == doctest::Approx(1.0));
  const auto p = WebProfile::power(2.5);
  CHECK(p.value(2.0) == doctest::Approx(std::pow(2.0, 2.5)));
  CHECK(p.derivative(2.0) == doctest::Approx(2.5 * std::pow(2.0, 1.5)));
  // zero profile has no quotient
  const auto sq = sweep(Polygon2D::rectangle(1, 1));
  const auto zero = WebProfile::tabulated({0, 1}, {0, 0});
  CHECK(rayleigh_numerator(zero, sq, 1) == 0.0);
  CHECK(rayleigh_denominator(zero, sq, 1) == 0.0);
  CHECK_THROWS_AS(rayleigh_quotient(zero, sq, 1), NumericalError);
}

TEST_CASE("radial profile on the disk recovers the eigenvalue") {
  const auto disk = sweep(Ball(2, 1.0));
  const auto prof = std::make_shared<RadialProfile>(solve_ball_eigenvalue(2, 1, 1.0));
  const auto q = rayleigh_quotient(WebProfile::radial_composed(prof), disk, 1);
  CHECK(q.quotient == doctest::Approx(5.78319).epsilon(1e-5));
  CHECK(rel(q.quotient, oracle::disk_lambda(1.0)) < 1e-8);
}

TEST_CASE("ball equality for every order") {
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const Ball b(n, 1.3);
      const auto r = optimize_profile(RadialFamily{}, sweep(b), k);
      CHECK(rel(r.quotient, solve_ball_eigenvalue(n, k, 1.3).lambda) < 1e-6);
    }
}

TEST_CASE("quotient scales like s^{-2k}") {
  const auto poly = testing_support::corpus_polygon(4);
  for (int k = 1; k <= 2; ++k) {
    const auto f = WebProfile::power(1.7);
    const double q1 = rayleigh_quotient(f, sweep(poly), k).quotient;
    const double q2 = rayleigh_quotient(f, sweep(scaled(poly, 2.5)), k).quotient;
    CHECK(rel(q2, q1 * std::pow(2.5, -2.0 * k)) < 1e-8);
  }
}

TEST_CASE("level-set integral inequality") {
  const auto sq = sweep(Polygon2D::rectangle(1, 1));
  // f = 1: both sides equal |Omega|
  const auto one = lemd_verify([](double) { return 1.0; }, sq);
  CHECK(one.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(one.rhs == doctest::Approx(1.0).epsilon(1e-10));
  const auto lin = lemd_verify(WebProfile::power(1.0), sq);
  CHECK(lin.lhs == doctest::Approx(1.0 / 6).epsilon(1e-10));
  CHECK(lin.rhs == doctest::Approx(0.125).epsilon(1e-10));
  CHECK(lin.margin > 0);
  CHECK_THROWS_AS(lemd_verify([](double s) { return -s; }, sq), InputError);
  // The disk sits above the bound as well.
  CHECK(lemd_verify(WebProfile::power(2.0), sweep(Ball(2, 1.0))).margin > 0);
  for (int i = 0; i < 30; ++i) {
    const auto sw = sweep(testing_support::corpus_polygon(i));
    for (double beta : {1.0, 2.0, 4.5}) CHECK(lemd_verify(WebProfile::power(beta), sw).margin >= -1e-12);
  }
}

TEST_CASE("optimized quotient sits between the eigenvalue and the closed form bound") {
  const auto sqb = Polygon2D::rectangle(1, 1);
  const auto sq = sweep(sqb);
  const auto best = optimize_profile(PowerFamily{}, sq, 1);
  CHECK(best.quotient <= 24.0 + 1e-9);
  CHECK(best.quotient >= 2 * kPi * kPi);
  CHECK(best.quotient <= makai_bound(quermass(sqb), 1));
  CHECK_THROWS_AS(optimize_profile(PowerFamily{0.5, 2}, sq, 1), InputError);
  CHECK(equivalent_ball_index(2, 1) == 1);
  CHECK(equivalent_ball_index(2, 2) == 1);
  CHECK(equivalent_ball_index(3, 2) == 2);
}

TEST_CASE("intermediate estimates of the closed form bound") {
  for (int i = 0; i < 25; ++i) {
    CAPTURE(i);
    const auto poly = testing_support::corpus_polygon(i);
    const auto q = quermass(poly);
    const auto sw = sweep(poly);
    const double A = q.volume(), P = q.perimeter();
    for (int k = 1; k <= 2; ++k) {
      const auto lin = WebProfile::power(1.0);
      // int d^{k+1} >= |Omega|^{k+2} / ((k+2) P^{k+1})
      CHECK(rayleigh_denominator(lin, sw, k) >= std::pow(A, k + 2) / ((k + 2) * std::pow(P, k + 1)) * (1 - 1e-10));
      // W_k(Omega_s) <= W_k(Omega)
      const double num = rayleigh_numerator(lin, sw, k);
      CHECK(num <= numerator_coefficient(2, k) * q[k] * sw.inradius() * (1 + 1e-10));
      CHECK(rayleigh_quotient(lin, sw, k).quotient <= makai_bound(q, k) * (1 + 1e-10));
    }
  }
}

TEST_CASE("quotient bounds the Dirichlet eigenvalue from above for k = 1") {
  for (int i = 0; i < 4; ++i) {
    const auto poly = testing_support::corpus_polygon(i);
    const auto fd = fd_laplace_eigen(poly, default_fd_spacing(poly));
    const auto best = optimize_profile(PowerFamily{}, sweep(poly), 1);
    CHECK(best.quotient >= fd.lambda);
  }
}
