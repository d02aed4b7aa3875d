#include "hessbound/web.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hessbound/numerics.hpp"

namespace hessbound {

namespace {

constexpr double kQuadTol = 1e-10;

void check_k(const InnerParallelSweep& sw, int k) {
  if (k < 1 || k > sw.dim()) throw InputError("web: order must satisfy 1 <= k <= n");
}

void check_domain(const WebProfile& f, const InnerParallelSweep& sw) {
  if (f.domain_end() < sw.inradius() * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "web: profile is defined on [0, " << f.domain_end() << "] but the inradius is " << sw.inradius();
    throw InputError(msg.str());
  }
}

}  // namespace

double numerator_coefficient(int n, int k) { return binomial(n, k); }

WebProfile WebProfile::power(double beta) {
  if (!(beta >= 1.0) || !std::isfinite(beta)) throw InputError("power profile needs beta >= 1");
  WebProfile p;
  p.kind_ = Kind::Power;
  p.beta_ = beta;
  return p;
}

WebProfile WebProfile::radial_composed(std::shared_ptr<const RadialProfile> profile) {
  if (!profile || profile->r.size() < 2) throw InputError("radial profile is empty");
  WebProfile p;
  p.kind_ = Kind::RadialComposed;
  p.radial_ = std::move(profile);
  return p;
}

WebProfile WebProfile::tabulated(std::vector<double> s, std::vector<double> f) {
  if (s.size() < 2 || s.size() != f.size()) throw InputError("tabulated profile needs matching nodes");
  if (s.front() != 0.0 || f.front() != 0.0) throw InputError("tabulated profile must start at f(0) = 0");
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (!(s[i + 1] > s[i])) throw InputError("tabulated profile nodes must increase");
    if (f[i + 1] < f[i]) throw InputError("tabulated profile must be nondecreasing");
  }
  const std::size_t m = s.size();
  std::vector<double> slope(m - 1), d(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) slope[i] = (f[i + 1] - f[i]) / (s[i + 1] - s[i]);
  d[0] = slope[0];
  d[m - 1] = slope[m - 2];
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (slope[i - 1] * slope[i] <= 0.0) continue;
    const double h0 = s[i] - s[i - 1], h1 = s[i + 1] - s[i];
    const double w1 = 2 * h1 + h0, w2 = h1 + 2 * h0;
    d[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
  }
  WebProfile p;
  p.kind_ = Kind::Tabulated;
  p.s_ = std::move(s);
  p.f_ = std::move(f);
  p.df_ = std::move(d);
  return p;
}

double WebProfile::value(double s) const {
  switch (kind_) {
    case Kind::Power:
      return s <= 0.0 ? 0.0 : std::pow(s, beta_);
    case Kind::RadialComposed:
      return -radial_->phi_at(radial_->radius - s);
    case Kind::Tabulated: {
      s = std::clamp(s, s_.front(), s_.back());
      const auto it = std::upper_bound(s_.begin(), s_.end(), s);
      const std::size_t j = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - s_.begin() - 1, 0), s_.size() - 2);
      return numerics::hermite3(s_[j], s_[j + 1], f_[j], f_[j + 1], df_[j], df_[j + 1], s);
    }
  }
  return 0.0;
}

double WebProfile::derivative(double s) const {
  switch (kind_) {
    case Kind::Power:
      if (s <= 0.0) return beta_ == 1.0 ? 1.0 : 0.0;
      return beta_ * std::pow(s, beta_ - 1.0);
    case Kind::RadialComposed:
      return radial_->dphi_at(radial_->radius - s);
    case Kind::Tabulated: {
      s = std::clamp(s, s_.front(), s_.back());
      const auto it = std::upper_bound(s_.begin(), s_.end(), s);
      const std::size_t j = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - s_.begin() - 1, 0), s_.size() - 2);
      const double h = s_[j + 1] - s_[j];
      const double t = (s - s_[j]) / h;
      return (6 * t * t - 6 * t) / h * f_[j] + (3 * t * t - 4 * t + 1) * df_[j] +
             (-6 * t * t + 6 * t) / h * f_[j + 1] + (3 * t * t - 2 * t) * df_[j + 1];
    }
  }
  return 0.0;
}

double WebProfile::domain_end() const {
  switch (kind_) {
    case Kind::Power:
      return std::numeric_limits<double>::infinity();
    case Kind::RadialComposed:
      return radial_->radius;
    case Kind::Tabulated:
      return s_.back();
  }
  return 0.0;
}

std::string WebProfile::describe() const {
  std::ostringstream s;
  switch (kind_) {
    case Kind::Power:
      s << "power(beta=" << beta_ << ")";
      break;
    case Kind::RadialComposed:
      s << "radial(n=" << radial_->n << ", k=" << radial_->k << ", R=" << radial_->radius << ")";
      break;
    case Kind::Tabulated:
      s << "tabulated(" << s_.size() << " nodes)";
      break;
  }
  return s.str();
}

double rayleigh_denominator(const WebProfile& f, const InnerParallelSweep& sw, int k) {
  check_k(sw, k);
  check_domain(f, sw);
  auto integrand = [&](double s) { return std::pow(f.value(s), k + 1) * sw.perimeter(s); };
  return numerics::integrate_breakpoints(integrand, sw.breakpoints(), kQuadTol, 0.0).value;
}

double rayleigh_numerator(const WebProfile& f, const InnerParallelSweep& sw, int k) {
  check_k(sw, k);
  check_domain(f, sw);
  auto integrand = [&](double s) { return std::pow(f.derivative(s), k + 1) * sw.quermass(k, s); };
  return numerator_coefficient(sw.dim(), k) *
         numerics::integrate_breakpoints(integrand, sw.breakpoints(), kQuadTol, 0.0).value;
}

RayleighResult rayleigh_quotient(const WebProfile& f, const InnerParallelSweep& sw, int k) {
  check_k(sw, k);
  check_domain(f, sw);
  const auto bp = sw.breakpoints();
  auto den_f = [&](double s) { return std::pow(f.value(s), k + 1) * sw.perimeter(s); };
  auto num_f = [&](double s) { return std::pow(f.derivative(s), k + 1) * sw.quermass(k, s); };
  const auto den = numerics::integrate_breakpoints(den_f, bp, kQuadTol, 0.0);
  const auto num = numerics::integrate_breakpoints(num_f, bp, kQuadTol, 0.0);
  if (!(den.value > 0.0)) throw NumericalError("rayleigh_quotient: zero denominator");
  RayleighResult out;
  out.k = k;
  const double c = numerator_coefficient(sw.dim(), k);
  out.numerator = c * num.value;
  out.denominator = den.value;
  out.quotient = out.numerator / out.denominator;
  out.profile = f.describe();
  out.error_estimate = out.quotient * (c * num.error / std::max(out.numerator, 1e-300) +
                                       den.error / out.denominator);
  const bool smooth_ok = std::holds_alternative<Ball>(sw.body()) || k == 1;
  out.provenance = "web-function Rayleigh quotient on level sets of d; upper bound modulo smoothing of d";
  if (!smooth_ok) out.provenance += "; formal web bound (curvature measures of a polytope)";
  return out;
}

LemdResult lemd_verify(const std::function<double(double)>& f, const InnerParallelSweep& sw) {
  const double r = sw.inradius();
  constexpr int kChecks = 256;
  double prev = f(0.0);
  for (int i = 1; i <= kChecks; ++i) {
    const double cur = f(r * i / kChecks);
    if (cur < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
      throw InputError("lemd_verify: profile is decreasing");
    }
    prev = cur;
  }
  const double area = sw.volume(0.0);
  const double per = sw.perimeter(0.0);
  auto lhs_f = [&](double t) { return f(t) * sw.perimeter(t); };
  LemdResult out;
  out.lhs = numerics::integrate_breakpoints(lhs_f, sw.breakpoints(), kQuadTol, 1e-15).value;
  out.rhs = per * numerics::integrate(f, 0.0, area / per, kQuadTol, 1e-15).value;
  out.margin = out.lhs - out.rhs;
  return out;
}

LemdResult lemd_verify(const WebProfile& f, const InnerParallelSweep& sw) {
  check_domain(f, sw);
  return lemd_verify([&f](double s) { return f.value(s); }, sw);
}

int equivalent_ball_index(int n, int k) { return k == n ? n - 1 : k; }

RayleighResult optimize_profile(const ProfileFamily& family, const InnerParallelSweep& sw, int k) {
  check_k(sw, k);
  if (const auto* radial = std::get_if<RadialFamily>(&family)) {
    (void)radial;
    const int n = sw.dim();
    const auto& first = sw.samples().front().w;
    const double R = equiv_ball_radius(first, equivalent_ball_index(n, k));
    auto prof = std::make_shared<RadialProfile>(solve_ball_eigenvalue(n, k, std::max(R, sw.inradius())));
    auto res = rayleigh_quotient(WebProfile::radial_composed(prof), sw, k);
    res.provenance += "; radial test profile phi(R - d) on the equivalent ball";
    return res;
  }
  const auto& power = std::get<PowerFamily>(family);
  if (!(power.lo >= 1.0) || power.hi < power.lo) throw InputError("power family needs 1 <= lo <= hi");
  auto q = [&](double beta) { return rayleigh_quotient(WebProfile::power(beta), sw, k).quotient; };
  if (power.hi == power.lo) return rayleigh_quotient(WebProfile::power(power.lo), sw, k);

  // Coarse scan brackets the minimum; golden section refines it.
  constexpr int kScan = 15;
  std::vector<double> betas(kScan), vals(kScan);
  std::size_t best = 0;
  for (int i = 0; i < kScan; ++i) {
    betas[i] = power.lo + (power.hi - power.lo) * i / (kScan - 1);
    vals[i] = q(betas[i]);
    if (vals[i] < vals[best]) best = i;
  }
  double a = betas[best > 0 ? best - 1 : 0];
  double b = betas[std::min<std::size_t>(best + 1, kScan - 1)];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = q(x1), f2 = q(x2);
  for (int it = 0; it < 60 && b - a > 1e-6; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = q(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = q(x2);
    }
  }
  double beta = f1 < f2 ? x1 : x2;
  if (std::min(f1, f2) > vals[best]) beta = betas[best];
  auto res = rayleigh_quotient(WebProfile::power(beta), sw, k);
  res.provenance += "; minimized over power profiles s^beta";
  return res;
}

}  // namespace hessbound
