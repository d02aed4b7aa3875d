#include "hessbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hessbound/hessian.hpp"
#include "hessbound/pderef.hpp"
#include "hessbound/radial.hpp"
#include "hessbound/sweep.hpp"

namespace hessbound {

namespace {

void check_k(int n, int k) {
  if (k < 1 || k > n) throw InputError("bounds: order must satisfy 1 <= k <= n");
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

}  // namespace

double makai_bound(const QuermassVector& qv, int k) {
  const int n = qv.dim();
  check_k(n, k);
  const double P = qv.perimeter();
  const double V = qv.volume();
  return n * (k + 2.0) / (n - k + 1.0) * std::pow(P, k + 1) / std::pow(V, k + 2) * qv[k - 1];
}

StabilityEntry stability_bound(const QuermassVector& qv, int k) {
  const int n = qv.dim();
  check_k(n, k);
  StabilityEntry e;
  e.index = equivalent_ball_index(n, k);
  e.radius = equiv_ball_radius(qv, e.index);
  const auto prof = solve_ball_eigenvalue(n, k, e.radius);
  const auto norms = profile_norms(prof, k + 1.0);
  e.lambda_ball = prof.lambda;
  e.c_omega = std::pow(norms.sup / norms.norm, k + 1.0);
  e.gap = std::max(0.0, qv.omega() * std::pow(e.radius, n) - qv.volume());
  e.product = e.c_omega * e.gap;
  e.applicable = e.product < 1.0;
  if (e.applicable) e.value = e.lambda_ball / (1.0 - e.product);
  e.provenance = k == n ? "Monge-Ampere stability estimate on the ball with the same W_{n-1}"
                        : "k-Hessian stability estimate on the ball with the same W_k";
  e.provenance += "; explicit form lambda(B)/(1 - C*gap)";
  if (!e.applicable) e.provenance += "; inapplicable: C*gap >= 1";
  return e;
}

StabilityEntry stability_bound(const ConvexBody& body, int k) { return stability_bound(quermass(body), k); }

LowerBound faber_krahn_lower(const QuermassVector& qv, int k) {
  const int n = qv.dim();
  check_k(n, k);
  LowerBound b;
  if (k == 1) {
    b.index = 0;
    b.provenance = "Faber-Krahn: ball with the same volume";
  } else if (k == n) {
    b.index = n - 1;
    b.provenance = "Monge-Ampere Faber-Krahn: ball with the same W_{n-1}";
  } else {
    b.index = k - 1;
    b.conditional = true;
    b.provenance = "ball with the same W_{k-1}; conditional on convex level sets of the eigenfunction";
  }
  b.radius = equiv_ball_radius(qv, b.index);
  b.value = solve_ball_eigenvalue(n, k, b.radius).lambda;
  return b;
}

LowerBound faber_krahn_lower(const ConvexBody& body, int k) { return faber_krahn_lower(quermass(body), k); }

InclusionChain inclusion_chain(const QuermassVector& qv, double tol) {
  InclusionChain c;
  for (int i = 0; i < qv.dim(); ++i) c.radii.push_back(equiv_ball_radius(qv, i));
  const double top = *std::max_element(c.radii.begin(), c.radii.end());
  for (std::size_t i = 0; i + 1 < c.radii.size(); ++i) {
    if (c.radii[i + 1] < c.radii[i] - tol * top) {
      throw NumericalError("inclusion chain violated: R_" + std::to_string(i + 1) + " = " + fmt(c.radii[i + 1]) +
                           " < R_" + std::to_string(i) + " = " + fmt(c.radii[i]));
    }
  }
  c.spread = c.radii.back() - c.radii.front();
  return c;
}

NewtonVerdict newton_check(const std::vector<double>& eigenvalues, int k, double tol) {
  const int n = static_cast<int>(eigenvalues.size());
  if (n < 1) throw InputError("newton_check: empty eigenvalue list");
  check_k(n, k);
  const Eigen::Map<const Eigen::VectorXd> eig(eigenvalues.data(), n);
  const Eigen::VectorXd s = elementary_symmetric(eig, k);
  NewtonVerdict v;
  v.k_convex = true;
  for (int j = 1; j <= k; ++j) {
    v.s.push_back(s(j));
    if (s(j) < 0.0) v.k_convex = false;
  }
  if (!v.k_convex) return v;
  v.chain = newton_chain(eig, k);
  v.chain_nonincreasing = true;
  for (std::size_t j = 0; j + 1 < v.chain.size(); ++j) {
    if (v.chain[j + 1] > v.chain[j] * (1.0 + tol) + tol) v.chain_nonincreasing = false;
  }
  return v;
}

double default_fd_spacing(const Polygon2D& polygon) {
  return std::min(polygon.diameter() / 128.0, inradius(polygon) / 16.0);
}

OrderingCheck check_ordering(const BoundReport& r) {
  OrderingCheck out;
  auto fail = [&](const std::string& what) {
    out.ok = false;
    out.violations.push_back(what);
  };
  const bool web_valid = r.web.ok() && (r.k == 1 || !r.surrogate);
  std::vector<std::pair<std::string, double>> uppers;
  if (r.makai.ok()) uppers.emplace_back("makai", r.makai.value->value);
  if (web_valid) uppers.emplace_back("web", r.web.value->quotient);
  if (r.stability.ok() && r.stability.value->applicable) uppers.emplace_back("stability", r.stability.value->value);

  if (r.faber_krahn.ok() && !r.faber_krahn.value->conditional) {
    const double lo = r.faber_krahn.value->value;
    for (const auto& [name, up] : uppers) {
      if (lo > up * (1.0 + 1e-9)) fail("faber_krahn " + fmt(lo) + " > " + name + " " + fmt(up));
    }
    if (r.reference.ok() && lo - 1e-6 > r.reference.value->value) {
      fail("faber_krahn " + fmt(lo) + " > reference " + fmt(r.reference.value->value));
    }
  }
  if (r.reference.ok()) {
    const double ref = r.reference.value->value;
    for (const auto& [name, up] : uppers) {
      if (ref > up + 1e-3 * ref) fail("reference " + fmt(ref) + " > " + name + " " + fmt(up));
    }
  }
  if (web_valid && r.makai.ok() && r.web.value->quotient > r.makai.value->value * (1.0 + 1e-9)) {
    fail("web " + fmt(r.web.value->quotient) + " > makai " + fmt(r.makai.value->value));
  }
  return out;
}

BoundReport report(const ConvexBody& body, int k, const ReportOptions& options) {
  BoundReport r;
  r.body = describe(body);
  r.n = dimension(body);
  check_k(r.n, k);
  r.k = k;
  r.quermass = quermass(body);
  r.inradius = inradius(body);
  r.surrogate = !std::holds_alternative<Ball>(body);

  auto attempt = [](auto& slot, auto&& fn) {
    try {
      slot.value = fn();
    } catch (const std::exception& e) {
      slot.error = e.what();
    }
  };

  attempt(r.chain, [&] { return inclusion_chain(r.quermass); });
  attempt(r.faber_krahn, [&] { return faber_krahn_lower(r.quermass, k); });
  attempt(r.makai, [&] {
    MakaiEntry m{makai_bound(r.quermass, k), "quermassintegral bound n(k+2)/(n-k+1) P^{k+1} |Omega|^{-k-2} W_{k-1}"};
    return m;
  });
  attempt(r.stability, [&] { return stability_bound(r.quermass, k); });
  attempt(r.web, [&] {
    const auto sw = sweep(body, options.samples);
    if (options.family) return optimize_profile(*options.family, sw, k);
    auto best = optimize_profile(PowerFamily{}, sw, k);
    try {
      auto radial = optimize_profile(RadialFamily{}, sw, k);
      if (radial.quotient < best.quotient) best = std::move(radial);
    } catch (const NumericalError&) {
    }
    return best;
  });

  if (!options.reference) {
    r.reference_note = "disabled";
  } else if (const auto* ball = std::get_if<Ball>(&body)) {
    attempt(r.reference, [&] {
      ReferenceValue ref;
      ref.value = solve_ball_eigenvalue(ball->dim, k, ball->radius).lambda;
      ref.provenance = "radial shooting on the ball";
      return ref;
    });
  } else if (const auto* poly = std::get_if<Polygon2D>(&body); poly && k == 1) {
    attempt(r.reference, [&] {
      const double h = options.h > 0.0 ? options.h : default_fd_spacing(*poly);
      const auto fd = fd_laplace_eigen(*poly, h);
      ReferenceValue ref;
      ref.value = fd.lambda;
      ref.error_estimate = fd.error_estimate;
      ref.h = h;
      ref.provenance = "five-point Dirichlet Laplacian, Shortley-Weller boundary, Richardson over h and 2h";
      return ref;
    });
  } else {
    r.reference_note = k == 1 ? "no finite-difference oracle for polytopes" : "no reference solver for k >= 2";
  }
  r.ordering = check_ordering(r);
  return r;
}

}  // namespace hessbound
