#pragma once

// Radial eigenfunctions of S_k on balls, computed by shooting in the
// eigenvalue and bisection.

#include <vector>

namespace hessbound {

/// Radial eigenfunction v(x) = phi(|x|) on B_R, normalized by phi(0) = -1,
/// tabulated on a uniform grid together with phi' and phi''.
struct RadialProfile {
  int n = 2;
  int k = 1;
  double radius = 1.0;
  double lambda = 0.0;
  std::vector<double> r, phi, dphi, d2phi;

  double phi_at(double s) const;
  double dphi_at(double s) const;
  double boundary_value() const { return phi.back(); }
};

/// Right-hand side of the radial ODE solved for phi''.
double radial_second_derivative(int n, int k, double lambda, double r, double phi, double dphi);

struct ShootResult {
  double boundary_value = 0.0;  // phi(R), or its linear continuation if clamped
  double stop_radius = 0.0;     // R, or the first zero of phi when clamped
  bool clamped = false;
  RadialProfile profile;
};

/// Integrates the radial ODE from the center with phi(0) = -1, phi'(0) = 0
/// for trial eigenvalue `lambda`. The profile is tabulated on `grid_points`
/// intervals; pass 0 to compute the boundary value only.
ShootResult shoot(int n, int k, double R, double lambda, int grid_points = 2048);

/// Principal eigenvalue and eigenfunction of S_k on B_R (1 <= k <= n).
RadialProfile solve_ball_eigenvalue(int n, int k, double R, int grid_points = 2048);

struct ProfileNorms {
  double sup = 0.0;       // ||v||_inf
  double p = 0.0;
  double norm = 0.0;      // ||v||_p
  double norm_pow = 0.0;  // ||v||_p^p
};

/// Sup norm and L^p norm of the profile over B_R:
/// ||v||_p^p = n omega_n int_0^R (-phi)^p r^{n-1} dr.
ProfileNorms profile_norms(const RadialProfile& profile, double p);

}  // namespace hessbound
