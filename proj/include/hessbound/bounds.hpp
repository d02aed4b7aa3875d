#pragma once

// Lower and upper bounds for the principal k-Hessian eigenvalue of a convex
// body, collected into one report.

#include <optional>
#include <string>
#include <vector>

#include "hessbound/geometry.hpp"
#include "hessbound/web.hpp"

namespace hessbound {

/// n(k+2)/(n-k+1) P^{k+1} / |Omega|^{k+2} W_{k-1}.
double makai_bound(const QuermassVector& qv, int k);

struct StabilityEntry {
  int index = 0;           // i = n-1 for k = n, i = k otherwise
  double radius = 0.0;     // R_i
  double lambda_ball = 0.0;
  double c_omega = 0.0;    // (||v||_inf / ||v||_{k+1})^{k+1} on B_{R_i}
  double gap = 0.0;        // omega_n R_i^n - |Omega|
  double product = 0.0;    // c_omega * gap
  bool applicable = false; // product < 1
  double value = 0.0;      // lambda_ball / (1 - product) when applicable
  std::string provenance;
};

StabilityEntry stability_bound(const ConvexBody& body, int k);
StabilityEntry stability_bound(const QuermassVector& qv, int k);

struct LowerBound {
  double value = 0.0;
  int index = 0;  // equivalent ball B_{R_index}
  double radius = 0.0;
  bool conditional = false;
  std::string provenance;
};

/// k = 1: lambda_1(B_{R_0}); k = n: lambda_n(B_{R_{n-1}}); otherwise
/// lambda_k(B_{R_{k-1}}), conditional on convex level sets.
LowerBound faber_krahn_lower(const QuermassVector& qv, int k);
LowerBound faber_krahn_lower(const ConvexBody& body, int k);

struct InclusionChain {
  std::vector<double> radii;  // R_0 .. R_{n-1}
  double spread = 0.0;        // R_{n-1} - R_0
};

/// Throws NumericalError when the radii fail to be nondecreasing beyond
/// `tol` relative to the largest radius.
InclusionChain inclusion_chain(const QuermassVector& qv, double tol = 1e-9);

struct NewtonVerdict {
  std::vector<double> s;      // S_1 .. S_k
  std::vector<double> chain;  // (S_j / C(n,j))^{1/j}, when k-convex
  bool k_convex = false;
  bool chain_nonincreasing = false;
};

NewtonVerdict newton_check(const std::vector<double>& eigenvalues, int k, double tol = 1e-12);

struct ReferenceValue {
  double value = 0.0;
  double error_estimate = 0.0;
  double h = 0.0;  // grid spacing, 0 for the radial solver
  std::string provenance;
};

template <class T>
struct Outcome {
  std::optional<T> value;
  std::string error;
  bool ok() const { return value.has_value(); }
};

struct MakaiEntry {
  double value = 0.0;
  std::string provenance;
};

struct OrderingCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

struct ReportOptions {
  int samples = 64;
  /// FD spacing for the k = 1 reference on polygons; 0 picks
  /// min(diameter/128, inradius/16).
  double h = 0.0;
  /// Restrict the web search to one family; unset evaluates both and keeps
  /// the smaller quotient.
  std::optional<ProfileFamily> family;
  bool reference = true;
};

struct BoundReport {
  std::string body;
  int n = 2;
  int k = 1;
  QuermassVector quermass;
  double inradius = 0.0;
  Outcome<InclusionChain> chain;
  Outcome<LowerBound> faber_krahn;
  Outcome<MakaiEntry> makai;
  Outcome<RayleighResult> web;
  Outcome<StabilityEntry> stability;
  Outcome<ReferenceValue> reference;
  std::string reference_note;  // why no reference, if absent
  OrderingCheck ordering;
  // A polygon or polytope stands in for a smooth strictly convex body.
  bool surrogate = false;
};

/// Quermass, sweep, web optimization, radial solves and all bounds. Failures
/// of individual entries are recorded and do not abort the others.
BoundReport report(const ConvexBody& body, int k, const ReportOptions& options = {});

/// Recomputes the ordering verdict from the entries of a report.
OrderingCheck check_ordering(const BoundReport& r);

/// Default FD spacing used by the report for a polygon.
double default_fd_spacing(const Polygon2D& polygon);

}  // namespace hessbound
