#include "hessbound/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hessbound/core.hpp"
#include "hessbound/hessian.hpp"
#include "hessbound/numerics.hpp"

namespace hessbound {

namespace {

constexpr double kStartFraction = 1e-4;  // series start r_0 = 1e-4 R
constexpr double kOdeTol = 1e-10;

using Stepper = numerics::DormandPrince<2>;
using State = Stepper::State;

void check_orders(int n, int k) {
  if (n < 2) throw InputError("radial: dimension must be at least 2");
  if (k < 1 || k > n) throw InputError("radial: order must satisfy 1 <= k <= n");
}

std::size_t cell_index(const RadialProfile& p, double s) {
  const std::size_t m = p.r.size() - 1;
  const double h = p.radius / static_cast<double>(m);
  const auto j = static_cast<std::size_t>(std::clamp(std::floor(s / h), 0.0, static_cast<double>(m - 1)));
  return j;
}

}  // namespace

double RadialProfile::phi_at(double s) const {
  s = std::clamp(s, 0.0, radius);
  const std::size_t j = cell_index(*this, s);
  return numerics::hermite5(r[j], r[j + 1], phi[j], phi[j + 1], dphi[j], dphi[j + 1], d2phi[j], d2phi[j + 1], s);
}

double RadialProfile::dphi_at(double s) const {
  s = std::clamp(s, 0.0, radius);
  const std::size_t j = cell_index(*this, s);
  return numerics::hermite3(r[j], r[j + 1], dphi[j], dphi[j + 1], d2phi[j], d2phi[j + 1], s);
}

double radial_second_derivative(int n, int k, double lambda, double r, double phi, double dphi) {
  const double rhs = lambda * std::pow(-phi, k);
  const double psi = r > 0.0 ? dphi / r : 0.0;
  if (k == 1) return rhs - (n - 1) * psi;
  const double tiny = 1e-150;
  if (r == 0.0 || std::abs(psi) < tiny) {
    // All Hessian eigenvalues coincide: C(n,k) phi''^k = rhs.
    return std::pow(std::max(rhs, 0.0) / binomial(n, k), 1.0 / k);
  }
  return (rhs - binomial(n - 1, k) * std::pow(psi, k)) / (binomial(n - 1, k - 1) * std::pow(psi, k - 1));
}

ShootResult shoot(int n, int k, double R, double lambda, int grid_points) {
  check_orders(n, k);
  if (!(R > 0.0)) throw InputError("shoot: radius must be positive");
  if (!(lambda > 0.0)) throw InputError("shoot: eigenvalue must be positive");
  if (grid_points < 0 || grid_points == 1) throw InputError("shoot: grid_points must be 0 or at least 2");

  auto rhs = [&](double r, const State& y) {
    return State(y(1), radial_second_derivative(n, k, lambda, r, y(0), y(1)));
  };
  const double a = std::pow(lambda / binomial(n, k), 1.0 / k);
  const double r0 = kStartFraction * R;
  State y(-1.0 + 0.5 * a * r0 * r0, a * r0);
  double r = r0;
  State dy = rhs(r, y);

  ShootResult out;
  RadialProfile& prof = out.profile;
  prof.n = n;
  prof.k = k;
  prof.radius = R;
  prof.lambda = lambda;

  const Stepper stepper(kOdeTol, kOdeTol);
  double h = 1e-3 * R;

  auto record = [&](double rr, const State& s) {
    prof.r.push_back(rr);
    prof.phi.push_back(s(0));
    prof.dphi.push_back(s(1));
    prof.d2phi.push_back(rr == 0.0 ? a : radial_second_derivative(n, k, lambda, rr, s(0), s(1)));
  };

  // Advances to `target`, stopping early at the first zero of phi.
  auto advance = [&](double target) -> bool {
    while (r < target) {
      const auto st = stepper.step(rhs, r, y, dy, target, h);
      if (st.y1(0) >= 0.0) {
        auto phi_of = [&](double s) {
          return numerics::hermite3(st.t0, st.t1, st.y0(0), st.y1(0), st.dy0(0), st.dy1(0), s);
        };
        const double rc = numerics::bisect_root(phi_of, st.t0, st.t1, 1e-15 * R);
        const double slope =
            numerics::hermite3(st.t0, st.t1, st.y0(1), st.y1(1), st.dy0(1), st.dy1(1), rc);
        out.clamped = true;
        out.stop_radius = rc;
        y = State(0.0, slope);
        r = rc;
        return false;
      }
      r = st.t1;
      y = st.y1;
      dy = st.dy1;
    }
    return true;
  };

  if (grid_points == 0) {
    if (advance(R)) {
      out.boundary_value = y(0);
      out.stop_radius = R;
    } else {
      out.boundary_value = y(1) * (R - r);
    }
    return out;
  }

  const double dr = R / grid_points;
  record(0.0, State(-1.0, 0.0));
  for (int j = 1; j <= grid_points; ++j) {
    const double rj = j == grid_points ? R : dr * j;
    if (rj <= r0) {
      record(rj, State(-1.0 + 0.5 * a * rj * rj, a * rj));
      continue;
    }
    if (out.clamped || !advance(rj)) {
      // Past the first zero the profile is continued linearly.
      const double stop = out.stop_radius;
      prof.r.push_back(rj);
      prof.phi.push_back(y(1) * (rj - stop));
      prof.dphi.push_back(y(1));
      prof.d2phi.push_back(0.0);
      continue;
    }
    record(rj, y);
  }
  out.boundary_value = prof.phi.back();
  if (!out.clamped) out.stop_radius = R;
  return out;
}

RadialProfile solve_ball_eigenvalue(int n, int k, double R, int grid_points) {
  check_orders(n, k);
  if (!(R > 0.0)) throw InputError("solve_ball_eigenvalue: radius must be positive");
  if (grid_points < 2) throw InputError("solve_ball_eigenvalue: grid_points must be at least 2");
  const double scale = std::pow(R, -2.0 * k);
  auto boundary = [&](double lambda) { return shoot(n, k, R, lambda, 0).boundary_value; };

  constexpr int kScanLimit = 60;
  double lo = scale, hi = scale;
  double flo = boundary(lo), fhi = flo;
  int steps = 0;
  if (flo < 0.0) {
    while (fhi < 0.0) {
      if (++steps > kScanLimit) break;
      lo = hi;
      flo = fhi;
      hi *= 2.0;
      fhi = boundary(hi);
    }
  } else {
    while (flo >= 0.0) {
      if (++steps > kScanLimit) break;
      hi = lo;
      fhi = flo;
      lo *= 0.5;
      flo = boundary(lo);
    }
  }
  if (!(flo < 0.0 && fhi >= 0.0)) {
    std::ostringstream msg;
    msg << "solve_ball_eigenvalue: no sign change of phi(R) for lambda in [" << scale * std::pow(2.0, -kScanLimit)
        << ", " << scale * std::pow(2.0, kScanLimit) << "] (n=" << n << ", k=" << k << ", R=" << R << ")";
    throw NumericalError(msg.str());
  }

  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    const double fm = boundary(mid);
    if (fm < flo - 1e-12 || fm > fhi + 1e-12) {
      throw NumericalError("solve_ball_eigenvalue: shooting map is not monotone in lambda over the bracket");
    }
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  // Secant step inside the final bracket, then tabulate.
  double lambda = 0.5 * (lo + hi);
  if (fhi > flo) lambda = std::clamp(lo - flo * (hi - lo) / (fhi - flo), lo, hi);
  auto result = shoot(n, k, R, lambda, grid_points);
  if (std::abs(result.boundary_value) >= 1e-9) {
    std::ostringstream msg;
    msg << "solve_ball_eigenvalue: boundary residual " << result.boundary_value << " exceeds 1e-9";
    throw NumericalError(msg.str());
  }
  auto& prof = result.profile;
  prof.phi.back() = 0.0;
  return std::move(prof);
}

ProfileNorms profile_norms(const RadialProfile& profile, double p) {
  if (!(p > 0.0)) throw InputError("profile_norms: exponent must be positive");
  if (profile.r.size() < 2) throw InputError("profile_norms: empty profile");
  ProfileNorms out;
  out.p = p;
  for (double v : profile.phi) out.sup = std::max(out.sup, std::abs(v));
  const int n = profile.n;
  auto integrand = [&](double s) {
    return std::pow(std::max(0.0, -profile.phi_at(s)), p) * std::pow(s, n - 1);
  };
  std::vector<double> breaks;
  const int chunks = 64;
  for (int i = 0; i <= chunks; ++i) breaks.push_back(profile.radius * i / chunks);
  const auto q = numerics::integrate_breakpoints(integrand, breaks, 1e-10, 0.0);
  out.norm_pow = n * unit_ball_volume(n) * q.value;
  out.norm = std::pow(out.norm_pow, 1.0 / p);
  return out;
}

}  // namespace hessbound
