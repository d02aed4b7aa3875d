#pragma once

// Small numerical kernels shared by the radial, web and sweep code:
// globally adaptive Gauss-Kronrod quadrature and an embedded Dormand-Prince
// 5(4) integrator.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include <Eigen/Core>

#include "hessbound/core.hpp"

namespace hessbound::numerics {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (7-point rule).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

template <class F>
Piece gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double x = h * kKronrodNodes[i];
    const double s = f(c - x) + f(c + x);
    kronrod += kKronrodWeights[i] * s;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * s;
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Integrates f over [a, b], bisecting the worst piece until the summed error
/// estimate is below max(abs_tol, rel_tol * |integral|).
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 1e-14,
                     int max_intervals = 4000) {
  if (b == a) return {};
  if (b < a) {
    auto r = integrate(f, b, a, rel_tol, abs_tol, max_intervals);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<detail::Piece> heap;
  auto first = detail::gk15(f, a, b);
  double total = first.value;
  double err = first.error;
  heap.push(first);
  int count = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) && count < max_intervals) {
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;
    }
    const auto left = detail::gk15(f, worst.a, mid);
    const auto right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum to shed the drift of incremental updates.
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {total, err, count};
}

/// Integrates f piecewise over consecutive breakpoints, so that kinks located
/// at the breakpoints never fall inside a Kronrod panel.
template <class F>
QuadResult integrate_breakpoints(F&& f, const std::vector<double>& breaks, double rel_tol = 1e-10,
                                 double abs_tol = 1e-14) {
  QuadResult out;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    const auto piece = integrate(f, breaks[i], breaks[i + 1], rel_tol, abs_tol);
    out.value += piece.value;
    out.error += piece.error;
    out.intervals += piece.intervals;
  }
  return out;
}

/// Embedded Dormand-Prince 5(4) pair with step-size control.
///
/// `Rhs` is callable as `State rhs(double t, const State& y)`. The caller
/// drives the integration one accepted step at a time through `step`, which
/// makes it easy to clamp at events or land on prescribed output points.
template <int N>
class DormandPrince {
 public:
  using State = Eigen::Matrix<double, N, 1>;

  DormandPrince(double abs_tol, double rel_tol, double min_step = 1e-14)
      : abs_tol_(abs_tol), rel_tol_(rel_tol), min_step_(min_step) {}

  struct Step {
    double t0, t1;
    State y0, y1;
    State dy0, dy1;
  };

  /// Advances from (t, y) towards t_end with trial step `h` (updated in
  /// place with the proposal for the next step). Returns the accepted step.
  template <class Rhs>
  Step step(Rhs& rhs, double t, const State& y, const State& dy, double t_end, double& h) const {
    for (int attempt = 0; attempt < 200; ++attempt) {
      h = std::min(h, t_end - t);
      const bool last = h >= t_end - t;
      if (!last && h < min_step_ * std::max(1.0, std::abs(t))) {
        throw NumericalError("Dormand-Prince step size underflow at t = " + std::to_string(t) +
                             " (stiff or singular right-hand side)");
      }
      const State k1 = dy;
      const State k2 = rhs(t + h / 5.0, State(y + h * (k1 / 5.0)));
      const State k3 = rhs(t + 3.0 * h / 10.0, State(y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2)));
      const State k4 = rhs(t + 4.0 * h / 5.0,
                           State(y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3)));
      const State k5 = rhs(t + 8.0 * h / 9.0,
                           State(y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                                          64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4)));
      const State k6 =
          rhs(t + h, State(y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3 +
                                    49.0 / 176.0 * k4 - 5103.0 / 18656.0 * k5)));
      const State y1 = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                                2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
      const State k7 = rhs(t + h, y1);
      const State e = h * (71.0 / 57600.0 * k1 - 71.0 / 16695.0 * k3 + 71.0 / 1920.0 * k4 -
                           17253.0 / 339200.0 * k5 + 22.0 / 525.0 * k6 - 1.0 / 40.0 * k7);
      double err = 0.0;
      for (int i = 0; i < y.size(); ++i) {
        const double sc = abs_tol_ + rel_tol_ * std::max(std::abs(y(i)), std::abs(y1(i)));
        err = std::max(err, std::abs(e(i)) / sc);
      }
      if (!std::isfinite(err)) {
        h *= 0.25;
        continue;
      }
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (err <= 1.0) {
        // t + h can round below t_end; the last step lands on it exactly.
        Step s{t, last ? t_end : t + h, y, y1, dy, k7};
        h *= factor;
        return s;
      }
      h *= factor;
    }
    throw NumericalError("Dormand-Prince failed to accept a step at t = " + std::to_string(t));
  }

 private:
  double abs_tol_;
  double rel_tol_;
  double min_step_;
};

/// Cubic Hermite interpolation on [x0, x1].
inline double hermite3(double x0, double x1, double f0, double f1, double d0, double d1, double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * f1 +
         (s3 - s2) * h * d1;
}

/// Quintic Hermite interpolation on [x0, x1] from values, first and second
/// derivatives at both ends.
inline double hermite5(double x0, double x1, double f0, double f1, double d0, double d1, double c0,
                       double c1, double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double h00 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
  const double h01 = 10 * s3 - 15 * s4 + 6 * s5;
  const double h10 = s - 6 * s3 + 8 * s4 - 3 * s5;
  const double h11 = -4 * s3 + 7 * s4 - 3 * s5;
  const double h20 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
  const double h21 = 0.5 * (s3 - 2 * s4 + s5);
  return h00 * f0 + h01 * f1 + h * (h10 * d0 + h11 * d1) + h * h * (h20 * c0 + h21 * c1);
}

/// Scalar bisection for a sign change of f on [lo, hi].
template <class F>
double bisect_root(F&& f, double lo, double hi, double x_tol, int max_iter = 200) {
  double flo = f(lo);
  for (int i = 0; i < max_iter && hi - lo > x_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace hessbound::numerics
