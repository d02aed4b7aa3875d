#include "hessbound/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hessbound::io {

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string format12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

json nums(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

template <int Dim>
std::vector<Eigen::Matrix<double, Dim, 1>> read_points(const json& j) {
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw InputError("body: missing vertex array");
  std::vector<Eigen::Matrix<double, Dim, 1>> pts;
  for (const auto& p : j["vertices"]) {
    if (!p.is_array() || p.size() != Dim) {
      throw InputError("body: every vertex needs exactly " + std::to_string(Dim) + " coordinates");
    }
    Eigen::Matrix<double, Dim, 1> x;
    for (int d = 0; d < Dim; ++d) {
      if (!p[d].is_number()) throw InputError("body: vertex coordinates must be numbers");
      x(d) = p[d].get<double>();
      if (!std::isfinite(x(d))) throw InputError("body: vertex coordinates must be finite");
    }
    pts.push_back(x);
  }
  return pts;
}

}  // namespace

ConvexBody parse_body(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw InputError("body: expected an object with a string field \"type\"");
  }
  const auto type = j["type"].get<std::string>();
  if (type == "polygon") return Polygon2D::from_vertices(read_points<2>(j));
  if (type == "polytope") return Polytope3D::from_vertices(read_points<3>(j));
  if (type == "ball") {
    if (!j.contains("dim") || !j["dim"].is_number_integer()) throw InputError("ball: integer field \"dim\" required");
    if (!j.contains("radius") || !j["radius"].is_number()) throw InputError("ball: numeric field \"radius\" required");
    return Ball(j["dim"].get<int>(), j["radius"].get<double>());
  }
  throw InputError("body: unknown type \"" + type + "\"");
}

ConvexBody load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path + ": malformed JSON (" + e.what() + ")");
  }
  return parse_body(j);
}

json body_to_json(const ConvexBody& body) {
  return std::visit(
      [](const auto& b) -> json {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return {{"type", "ball"}, {"dim", b.dim}, {"radius", num(b.radius)}};
        } else {
          json v = json::array();
          for (const auto& p : b.vertices()) {
            json q = json::array();
            for (Eigen::Index d = 0; d < p.size(); ++d) q.push_back(num(p(d)));
            v.push_back(q);
          }
          return {{"type", std::is_same_v<T, Polygon2D> ? "polygon" : "polytope"}, {"vertices", v}};
        }
      },
      body);
}

json quermass_json(const ConvexBody& body) {
  const auto qv = quermass(body);
  const auto af = af_check(qv);
  json entries = json::array();
  for (const auto& e : af.entries) entries.push_back({{"i", e.i}, {"j", e.j}, {"value", num(e.value)}});
  std::vector<double> radii;
  for (int i = 0; i < qv.dim(); ++i) radii.push_back(equiv_ball_radius(qv, i));
  return {{"body", describe(body)},
          {"n", qv.dim()},
          {"W", nums(qv.values())},
          {"omega", num(qv.omega())},
          {"volume", num(qv.volume())},
          {"perimeter", num(qv.perimeter())},
          {"inradius", num(inradius(body))},
          {"equivalent_radii", nums(radii)},
          {"af", {{"entries", entries}, {"min", num(af.min_value)}, {"violated", af.violated}}}};
}

json rayleigh_json(const RayleighResult& r) {
  return {{"k", r.k},
          {"numerator", num(r.numerator)},
          {"denominator", num(r.denominator)},
          {"quotient", num(r.quotient)},
          {"profile", r.profile},
          {"error_estimate", num(r.error_estimate)},
          {"provenance", r.provenance}};
}

namespace {

template <class T, class F>
json outcome(const Outcome<T>& o, F&& to_json) {
  if (o.ok()) return to_json(*o.value);
  return {{"error", o.error}};
}

}  // namespace

json report_json(const BoundReport& r) {
  json j;
  j["schema"] = "hessbound/1";
  j["body"] = r.body;
  j["n"] = r.n;
  j["k"] = r.k;
  j["W"] = nums(r.quermass.values());
  j["inradius"] = num(r.inradius);
  j["surrogate"] = r.surrogate;
  if (r.surrogate) {
    j["surrogate_note"] = "polygon/polytope used in place of a smooth strictly convex body";
  }
  j["inclusion_chain"] = outcome(r.chain, [](const InclusionChain& c) -> json {
    return {{"radii", nums(c.radii)}, {"spread", num(c.spread)}};
  });
  j["lower"]["faber_krahn"] = outcome(r.faber_krahn, [](const LowerBound& b) -> json {
    return {{"value", num(b.value)},
            {"index", b.index},
            {"radius", num(b.radius)},
            {"conditional", b.conditional},
            {"provenance", b.provenance}};
  });
  j["upper"]["makai"] = outcome(r.makai, [](const MakaiEntry& m) -> json {
    return {{"value", num(m.value)}, {"provenance", m.provenance}};
  });
  j["upper"]["web"] = outcome(r.web, [](const RayleighResult& w) { return rayleigh_json(w); });
  j["upper"]["stability"] = outcome(r.stability, [](const StabilityEntry& s) -> json {
    json e = {{"applicable", s.applicable},
              {"index", s.index},
              {"radius", num(s.radius)},
              {"lambda_ball", num(s.lambda_ball)},
              {"c_omega", num(s.c_omega)},
              {"gap", num(s.gap)},
              {"product", num(s.product)},
              {"provenance", s.provenance}};
    e["value"] = s.applicable ? num(s.value) : json(nullptr);
    return e;
  });
  if (r.stability.ok() && r.reference.ok()) {
    const auto& s = *r.stability.value;
    const double ref = r.reference.value->value;
    const double rel = (ref - s.lambda_ball) / ref;
    j["upper"]["stability"]["relative_gap"] = num(rel);
    j["upper"]["stability"]["relative_gap_holds"] = rel <= s.product + 1e-6;
  }
  if (r.reference.ok()) {
    const auto& ref = *r.reference.value;
    j["reference"] = {{"value", num(ref.value)},
                      {"error_estimate", num(ref.error_estimate)},
                      {"h", num(ref.h)},
                      {"provenance", ref.provenance}};
  } else if (!r.reference.error.empty()) {
    j["reference"] = {{"error", r.reference.error}};
  } else {
    j["reference"] = {{"absent", r.reference_note}};
  }
  j["ordering"] = {{"ok", r.ordering.ok}, {"violations", r.ordering.violations}};
  return j;
}

void write_sweep_csv(std::ostream& out, const InnerParallelSweep& sw) {
  out << 't';
  for (int i = 0; i <= sw.dim(); ++i) out << ",W" << i;
  out << ",event\n";
  for (const auto& s : sw.samples()) {
    out << format12(s.t);
    for (int i = 0; i <= sw.dim(); ++i) out << ',' << format12(s.w[i]);
    out << ',' << (s.event ? 1 : 0) << '\n';
  }
}

void write_profile_csv(std::ostream& out, const RadialProfile& profile) {
  out << "r,phi,dphi\n";
  for (std::size_t j = 0; j < profile.r.size(); ++j) {
    out << format12(profile.r[j]) << ',' << format12(profile.phi[j]) << ',' << format12(profile.dphi[j]) << '\n';
  }
}

std::string report_csv_header() {
  return "index,seed,body,k,area,perimeter,inradius,faber_krahn,conditional,reference,web,makai,stability,"
         "c_gap,relative_gap,margin_lower,margin_web,margin_makai,margin_stability,ordering_ok,errors";
}

std::string report_csv_row(std::size_t index, std::uint64_t seed, const BoundReport& r, const std::string& errors) {
  auto cell = [](bool present, double v) { return present ? format12(v) : std::string(); };
  const bool fk = r.faber_krahn.ok(), ref = r.reference.ok(), web = r.web.ok(), mk = r.makai.ok();
  const bool st = r.stability.ok();
  const double vfk = fk ? r.faber_krahn.value->value : 0.0;
  const double vref = ref ? r.reference.value->value : 0.0;
  const double vweb = web ? r.web.value->quotient : 0.0;
  const double vmk = mk ? r.makai.value->value : 0.0;
  const bool st_app = st && r.stability.value->applicable;
  std::ostringstream s;
  s << index << ',' << seed << ",\"" << r.body << "\"," << r.k << ',' << format12(r.quermass.volume()) << ','
    << format12(r.quermass.perimeter()) << ',' << format12(r.inradius) << ',' << cell(fk, vfk) << ','
    << (fk && r.faber_krahn.value->conditional ? 1 : 0) << ',' << cell(ref, vref) << ',' << cell(web, vweb) << ','
    << cell(mk, vmk) << ',' << cell(st_app, st_app ? r.stability.value->value : 0.0) << ','
    << cell(st, st ? r.stability.value->product : 0.0) << ','
    << cell(st && ref, st && ref ? (vref - r.stability.value->lambda_ball) / vref : 0.0) << ',';
  // Margins are positive when the ordering holds.
  const double upper_ref = ref ? vref : vweb;
  s << cell(fk && (ref || web), upper_ref - vfk) << ',' << cell(ref && web, vweb - vref) << ','
    << cell(web && mk, vmk - vweb) << ','
    << cell(st && ref, st && ref ? r.stability.value->product - (vref - r.stability.value->lambda_ball) / vref : 0.0)
    << ',' << (r.ordering.ok ? 1 : 0) << ",\"";
  for (char c : errors) s << (c == '"' ? '\'' : c);
  s << '"';
  return s.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hessbound::io
