#pragma once

// Rayleigh quotients of web functions u = -f(d), d the distance to the
// boundary, evaluated level by level on the inner parallel sweep.

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hessbound/radial.hpp"
#include "hessbound/sweep.hpp"

namespace hessbound {

/// Nondecreasing C^1 profile f with f(0) = 0.
class WebProfile {
 public:
  enum class Kind { Power, RadialComposed, Tabulated };

  /// f(s) = s^beta, beta >= 1.
  static WebProfile power(double beta);
  /// f(s) = -phi(R - s) for the ball eigenfunction phi on B_R.
  static WebProfile radial_composed(std::shared_ptr<const RadialProfile> profile);
  /// Monotone piecewise cubic (Fritsch-Carlson) through (s_j, f_j); s_0 = 0.
  static WebProfile tabulated(std::vector<double> s, std::vector<double> f);

  Kind kind() const { return kind_; }
  double value(double s) const;
  double derivative(double s) const;
  /// Right end of the interval on which f is defined.
  double domain_end() const;
  std::string describe() const;
  double beta() const { return beta_; }
  const RadialProfile* radial() const { return radial_.get(); }

 private:
  Kind kind_ = Kind::Power;
  double beta_ = 1.0;
  std::shared_ptr<const RadialProfile> radial_;
  std::vector<double> s_, f_, df_;
};

struct RayleighResult {
  int k = 1;
  double numerator = 0.0;
  double denominator = 0.0;
  double quotient = 0.0;
  std::string profile;
  double error_estimate = 0.0;
  std::string provenance;
};

/// int_0^{r} f(s)^{k+1} P(Omega_s) ds  ==  int_Omega (-u)^{k+1} dx.
double rayleigh_denominator(const WebProfile& f, const InnerParallelSweep& sw, int k);
/// Level-set weight of int (-u) S_k(D^2 u): on {u = -t} the integrand is
/// sigma_{k-1}(curvatures) |Du|^k / k, and the boundary integral of
/// sigma_{k-1} equals n C(n-1,k-1) W_k. The product n C(n-1,k-1)/k is C(n,k).
double numerator_coefficient(int n, int k);

/// C(n,k) int_0^{r} f'(s)^{k+1} W_k(Omega_s) ds  ==  int_Omega (-u) S_k(D^2 u) dx.
double rayleigh_numerator(const WebProfile& f, const InnerParallelSweep& sw, int k);
RayleighResult rayleigh_quotient(const WebProfile& f, const InnerParallelSweep& sw, int k);

struct LemdResult {
  double lhs = 0.0;     // int_0^{r} f(t) P(t) dt
  double rhs = 0.0;     // P(Omega) int_0^{|Omega|/P(Omega)} f(t) dt
  double margin = 0.0;  // lhs - rhs
};

/// Both sides of the integral inequality for nondecreasing f. Rejects a
/// profile that decreases anywhere on [0, r_Omega].
LemdResult lemd_verify(const std::function<double(double)>& f, const InnerParallelSweep& sw);
LemdResult lemd_verify(const WebProfile& f, const InnerParallelSweep& sw);

struct PowerFamily {
  double lo = 1.0;
  double hi = 8.0;
};
struct RadialFamily {};
using ProfileFamily = std::variant<PowerFamily, RadialFamily>;

/// Index of the equivalent ball used by the radial test profile:
/// n-1 when k = n, k otherwise.
int equivalent_ball_index(int n, int k);

/// Smallest quotient over the family. Power: coarse scan then golden-section
/// refinement in beta. Radial: the composed ball eigenfunction on the
/// equivalent ball.
RayleighResult optimize_profile(const ProfileFamily& family, const InnerParallelSweep& sw, int k);

}  // namespace hessbound
