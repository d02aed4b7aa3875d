#pragma once

// Sampled family of inner parallel bodies Omega_t, 0 <= t <= r_Omega.

#include <optional>
#include <vector>

#include "hessbound/geometry.hpp"

namespace hessbound {

struct SweepSample {
  double t = 0.0;
  QuermassVector w;
  bool event = false;  // an edge (2D) or facet/edge (3D) vanishes at t
};

/// Quermassintegrals of Omega_t on a grid refined at the combinatorial
/// events of the inner parallel family.
///
/// Between consecutive events every W_i(Omega_t) of a polygon or polytope is
/// a polynomial in t of degree at most 3, so the piecewise cubic Lagrange
/// interpolant used by `quermass` is exact up to rounding. Balls are
/// evaluated in closed form.
class InnerParallelSweep {
 public:
  InnerParallelSweep(ConvexBody body, double inradius, std::vector<SweepSample> samples,
                     std::vector<double> events);

  const ConvexBody& body() const { return body_; }
  int dim() const { return n_; }
  double inradius() const { return inradius_; }
  const std::vector<SweepSample>& samples() const { return samples_; }
  const std::vector<double>& events() const { return events_; }
  /// 0, the interior event times, r_Omega.
  std::vector<double> breakpoints() const;

  double quermass(int i, double t) const;
  double quermass_derivative(int i, double t) const;
  double volume(double t) const { return quermass(0, t); }
  double perimeter(double t) const { return n_ * quermass(1, t); }

 private:
  struct Piece {
    std::size_t first, last;  // sample index range, inclusive
  };
  const Piece& piece_for(double t) const;
  template <bool Derivative>
  double interpolate(int i, double t) const;

  ConvexBody body_;
  int n_ = 2;
  double inradius_ = 0.0;
  std::vector<SweepSample> samples_;
  std::vector<double> events_;
  std::vector<Piece> pieces_;
  std::optional<double> ball_radius_;
};

/// Samples Omega_t on a Chebyshev grid of `m` points plus the event times,
/// with at least five samples between consecutive events. Requires m >= 16.
InnerParallelSweep sweep(const ConvexBody& body, int m = 64);

/// Times in (0, r) at which an edge of the polygon's inner parallel body
/// shrinks to a point.
std::vector<double> polygon_events(const Polygon2D& polygon, double r);

}  // namespace hessbound
