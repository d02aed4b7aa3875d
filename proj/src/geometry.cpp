#include "hessbound/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include <Eigen/Dense>

#include "hessbound/lp.hpp"

namespace hessbound {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCollinearTol = 1e-12;  // on cross products of unit-diameter edges
constexpr double kMergeTol = 1e-11;      // relative to the diameter

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

template <class Points>
double point_diameter(const Points& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

// 2D convex hull (monotone chain), counterclockwise, collinear points dropped.
std::vector<int> hull2d(const std::vector<Vec2>& pts, double tol) {
  std::vector<int> idx(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return pts[a].x() < pts[b].x() || (pts[a].x() == pts[b].x() && pts[a].y() < pts[b].y());
  });
  if (idx.size() < 3) return idx;
  std::vector<int> h(2 * idx.size());
  std::size_t k = 0;
  // Sine test, so that tiny but genuine facets survive.
  auto turn = [&](int o, int a, int b) {
    const Vec2 u = pts[a] - pts[o], w = pts[b] - pts[o];
    return cross2(u, w) - tol * u.norm() * w.norm();
  };
  for (int i : idx) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], i) <= 0.0) --k;
    h[k++] = i;
  }
  for (std::size_t t = k + 1, i = idx.size() - 1; i-- > 0;) {
    const int p = idx[i];
    while (k >= t && turn(h[k - 2], h[k - 1], p) <= 0.0) --k;
    h[k++] = p;
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polygon2D

namespace detail {

double loop_area(const std::vector<Vec2>& loop) {
  double a = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) a += cross2(loop[i], loop[(i + 1) % loop.size()]);
  return 0.5 * a;
}

double loop_perimeter(const std::vector<Vec2>& loop) {
  double p = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) p += (loop[(i + 1) % loop.size()] - loop[i]).norm();
  return p;
}

std::vector<Vec2> clean_loop(const std::vector<Vec2>& loop, double scale) {
  std::vector<Vec2> out = loop;
  bool changed = true;
  while (changed && out.size() >= 2) {
    changed = false;
    std::vector<Vec2> next;
    next.reserve(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Vec2& p = out[i];
      const Vec2& q = out[(i + 1) % out.size()];
      if ((q - p).norm() <= kMergeTol * scale) {
        changed = true;
        continue;
      }
      next.push_back(p);
    }
    out = std::move(next);
    if (out.size() < 3) break;
    next.clear();
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Vec2& a = out[(i + out.size() - 1) % out.size()];
      const Vec2& b = out[i];
      const Vec2& c = out[(i + 1) % out.size()];
      if (cross2((b - a) / scale, (c - b) / scale) <= kCollinearTol) {
        changed = true;
        continue;
      }
      next.push_back(b);
    }
    if (changed) out = std::move(next);
  }
  return out;
}

std::vector<Vec2> clip_offset(const Polygon2D& polygon, double t) {
  std::vector<Vec2> loop = polygon.vertices();
  for (const auto& h : polygon.halfspaces()) {
    if (loop.empty()) break;
    std::vector<Vec2> next;
    next.reserve(loop.size() + 1);
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Vec2& p = loop[i];
      const Vec2& q = loop[(i + 1) % loop.size()];
      const double dp = h.signed_distance(p) + t;
      const double dq = h.signed_distance(q) + t;
      if (dp <= 0.0) next.push_back(p);
      if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
        next.push_back(p + (dp / (dp - dq)) * (q - p));
      }
    }
    loop = std::move(next);
  }
  return loop;
}

}  // namespace detail

Polygon2D::Polygon2D(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t m = vertices_.size();
  if (m < 3) throw InputError("polygon needs at least 3 vertices");
  for (const auto& v : vertices_) {
    if (!v.allFinite()) throw InputError("polygon vertex is not finite");
  }
  const double d = diameter();
  if (!(d > 0.0)) throw InputError("polygon is degenerate (zero diameter)");
  double turning = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 e1 = (vertices_[i] - vertices_[(i + m - 1) % m]) / d;
    const Vec2 e2 = (vertices_[(i + 1) % m] - vertices_[i]) / d;
    const double c = cross2(e1, e2);
    if (!(c > kCollinearTol)) {
      std::ostringstream msg;
      msg << "polygon is not strictly convex and counterclockwise at vertex " << i;
      throw InputError(msg.str());
    }
    turning += std::atan2(c, e1.dot(e2));
  }
  if (std::abs(turning - 2.0 * kPi) > 1e-6) throw InputError("polygon boundary winds more than once");
  if (!(area() > 0.0)) throw InputError("polygon has zero area");
}

Polygon2D Polygon2D::from_vertices(std::vector<Vec2> vertices) {
  if (vertices.size() >= 3 && detail::loop_area(vertices) < 0.0) {
    std::reverse(vertices.begin(), vertices.end());
  }
  return Polygon2D(std::move(vertices));
}

Polygon2D Polygon2D::rectangle(double width, double height) {
  return Polygon2D({Vec2(0, 0), Vec2(width, 0), Vec2(width, height), Vec2(0, height)});
}

Polygon2D Polygon2D::regular(int count, double circumradius) {
  std::vector<Vec2> v;
  v.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double a = 2.0 * kPi * i / count;
    v.emplace_back(circumradius * std::cos(a), circumradius * std::sin(a));
  }
  return Polygon2D(std::move(v));
}

std::vector<Halfspace<2>> Polygon2D::halfspaces() const {
  std::vector<Halfspace<2>> hs;
  hs.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vec2& p = vertices_[i];
    const Vec2& q = vertices_[(i + 1) % vertices_.size()];
    const Vec2 e = q - p;
    const Vec2 n = Vec2(e.y(), -e.x()).normalized();
    hs.push_back({n, n.dot(p)});
  }
  return hs;
}

double Polygon2D::area() const { return detail::loop_area(vertices_); }
double Polygon2D::perimeter() const { return detail::loop_perimeter(vertices_); }
double Polygon2D::diameter() const { return point_diameter(vertices_); }

// ---------------------------------------------------------------------------
// Polytope3D

Polytope3D Polytope3D::assemble(std::vector<Vec3> points, const std::vector<Halfspace<3>>& planes,
                                double scale) {
  // Merge near-coincident points.
  std::vector<Vec3> merged;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& q : merged) {
      if ((p - q).norm() <= 1e-9 * scale) {
        dup = true;
        break;
      }
    }
    if (!dup) merged.push_back(p);
  }

  Polytope3D poly;
  std::vector<int> used(merged.size(), -1);
  const double plane_tol = 1e-9 * scale;
  for (std::size_t pi = 0; pi < planes.size(); ++pi) {
    const auto& h = planes[pi];
    bool duplicate = false;
    for (const auto& f : poly.faces_) {
      if (f.normal.dot(h.normal) > 1.0 - 1e-12 && std::abs(f.offset - h.offset) <= plane_tol) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    std::vector<int> on;
    for (std::size_t i = 0; i < merged.size(); ++i) {
      if (std::abs(h.signed_distance(merged[i])) <= plane_tol) on.push_back(static_cast<int>(i));
    }
    if (on.size() < 3) continue;
    Vec3 u = h.normal.unitOrthogonal();
    Vec3 v = h.normal.cross(u);
    std::vector<Vec2> flat;
    for (int i : on) flat.emplace_back(merged[i].dot(u) / scale, merged[i].dot(v) / scale);
    const auto hull = hull2d(flat, 1e-12);
    if (hull.size() < 3) continue;
    Face face;
    face.normal = h.normal;
    face.offset = h.offset;
    face.source = static_cast<int>(pi);
    for (int i : hull) face.loop.push_back(on[i]);
    poly.faces_.push_back(std::move(face));
  }
  // Reindex to the vertices actually used by faces.
  for (auto& f : poly.faces_) {
    for (int& i : f.loop) {
      if (used[i] < 0) {
        used[i] = static_cast<int>(poly.vertices_.size());
        poly.vertices_.push_back(merged[i]);
      }
      i = used[i];
    }
  }
  std::map<std::pair<int, int>, Edge> edges;
  for (std::size_t fi = 0; fi < poly.faces_.size(); ++fi) {
    const auto& loop = poly.faces_[fi].loop;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const int a = loop[i];
      const int b = loop[(i + 1) % loop.size()];
      auto key = std::minmax(a, b);
      auto& e = edges[{key.first, key.second}];
      e.a = key.first;
      e.b = key.second;
      if (e.left < 0) {
        e.left = static_cast<int>(fi);
      } else if (e.right < 0) {
        e.right = static_cast<int>(fi);
      } else {
        throw NumericalError("polytope edge shared by more than two faces");
      }
    }
  }
  for (const auto& [key, e] : edges) {
    if (e.right < 0) throw NumericalError("polytope boundary is not closed");
    poly.edges_.push_back(e);
  }
  poly.validate(scale);
  return poly;
}

void Polytope3D::validate(double scale) const {
  if (faces_.size() < 4 || vertices_.size() < 4) throw InputError("polytope is not full-dimensional");
  for (const auto& f : faces_) {
    for (const auto& v : vertices_) {
      if (Halfspace<3>{f.normal, f.offset}.signed_distance(v) > 1e-8 * scale) {
        throw NumericalError("polytope vertex violates a facet halfspace");
      }
    }
  }
  if (!(volume() > 1e-12 * scale * scale * scale)) throw InputError("polytope has zero volume");
}

Polytope3D Polytope3D::from_vertices(const std::vector<Vec3>& points) {
  if (points.size() < 4) throw InputError("polytope needs at least 4 vertices");
  for (const auto& p : points) {
    if (!p.allFinite()) throw InputError("polytope vertex is not finite");
  }
  const double scale = point_diameter(points);
  if (!(scale > 0.0)) throw InputError("polytope is degenerate");
  const double tol = 1e-10 * scale;
  std::vector<Halfspace<3>> planes;
  const std::size_t m = points.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        Vec3 n = (points[j] - points[i]).cross(points[k] - points[i]);
        if (n.norm() <= 1e-10 * scale * scale) continue;
        n.normalize();
        const double b = n.dot(points[i]);
        bool below = true, above = true;
        for (const auto& p : points) {
          const double s = n.dot(p) - b;
          if (s > tol) below = false;
          if (s < -tol) above = false;
          if (!below && !above) break;
        }
        if (below) planes.push_back({n, b});
        if (above) planes.push_back({-n, -b});
      }
    }
  }
  return assemble(points, planes, scale);
}

Polytope3D Polytope3D::from_halfspaces(const std::vector<Halfspace<3>>& halfspaces) {
  if (halfspaces.size() < 4) throw InputError("polytope needs at least 4 halfspaces");
  double s0 = 1e-300;
  for (const auto& h : halfspaces) s0 = std::max(s0, std::abs(h.offset));
  std::vector<Vec3> pts;
  const std::size_t m = halfspaces.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        Eigen::Matrix3d A;
        A.row(0) = halfspaces[i].normal.transpose();
        A.row(1) = halfspaces[j].normal.transpose();
        A.row(2) = halfspaces[k].normal.transpose();
        if (std::abs(A.determinant()) < 1e-12) continue;
        const Vec3 x = A.partialPivLu().solve(
            Vec3(halfspaces[i].offset, halfspaces[j].offset, halfspaces[k].offset));
        bool inside = true;
        for (const auto& h : halfspaces) {
          if (h.signed_distance(x) > 1e-10 * s0) {
            inside = false;
            break;
          }
        }
        if (inside) pts.push_back(x);
      }
    }
  }
  if (pts.size() < 4) throw InputError("halfspace intersection is empty or not full-dimensional");
  const double scale = point_diameter(pts);
  if (!(scale > 1e-12 * s0)) throw InputError("halfspace intersection is degenerate");
  return assemble(std::move(pts), halfspaces, scale);
}

Polytope3D Polytope3D::box(double a, double b, double c) {
  std::vector<Vec3> v;
  for (int i = 0; i < 8; ++i) v.emplace_back((i & 1) * a, ((i >> 1) & 1) * b, ((i >> 2) & 1) * c);
  return from_vertices(v);
}

std::vector<Halfspace<3>> Polytope3D::halfspaces() const {
  std::vector<Halfspace<3>> hs;
  for (const auto& f : faces_) hs.push_back({f.normal, f.offset});
  return hs;
}

namespace {

double face_area(const std::vector<Vec3>& v, const Polytope3D::Face& f) {
  Vec3 acc = Vec3::Zero();
  for (std::size_t i = 0; i < f.loop.size(); ++i) {
    acc += v[f.loop[i]].cross(v[f.loop[(i + 1) % f.loop.size()]]);
  }
  return 0.5 * f.normal.dot(acc);
}

}  // namespace

double Polytope3D::volume() const {
  double vol = 0.0;
  for (const auto& f : faces_) vol += f.offset * face_area(vertices_, f) / 3.0;
  return vol;
}

double Polytope3D::surface_area() const {
  double s = 0.0;
  for (const auto& f : faces_) s += face_area(vertices_, f);
  return s;
}

double Polytope3D::mean_curvature_integral() const {
  double m = 0.0;
  for (const auto& e : edges_) {
    const double c = std::clamp(faces_[e.left].normal.dot(faces_[e.right].normal), -1.0, 1.0);
    m += (vertices_[e.a] - vertices_[e.b]).norm() * std::acos(c);
  }
  return 0.5 * m;
}

double Polytope3D::diameter() const { return point_diameter(vertices_); }

// ---------------------------------------------------------------------------
// Ball and ConvexBody helpers

Ball::Ball(int dim, double radius) : dim(dim), radius(radius) {
  if (dim < 2) throw InputError("ball dimension must be at least 2");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("ball radius must be positive");
}

int dimension(const ConvexBody& body) {
  return std::visit(
      [](const auto& b) -> int {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polygon2D>) return 2;
        else if constexpr (std::is_same_v<T, Polytope3D>) return 3;
        else return b.dim;
      },
      body);
}

std::string describe(const ConvexBody& body) {
  std::ostringstream s;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polygon2D>) {
          s << "polygon(" << b.size() << " vertices)";
        } else if constexpr (std::is_same_v<T, Polytope3D>) {
          s << "polytope(" << b.vertices().size() << " vertices, " << b.faces().size() << " faces)";
        } else {
          s << "ball(n=" << b.dim << ", R=" << b.radius << ")";
        }
      },
      body);
  return s.str();
}

ConvexBody scaled(const ConvexBody& body, double s) {
  if (!(s > 0.0)) throw InputError("dilation factor must be positive");
  return std::visit(
      [s](const auto& b) -> ConvexBody {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polygon2D>) {
          auto v = b.vertices();
          for (auto& p : v) p *= s;
          return Polygon2D(std::move(v));
        } else if constexpr (std::is_same_v<T, Polytope3D>) {
          auto v = b.vertices();
          for (auto& p : v) p *= s;
          return Polytope3D::from_vertices(v);
        } else {
          return Ball(b.dim, b.radius * s);
        }
      },
      body);
}

// ---------------------------------------------------------------------------
// Quermassintegrals

QuermassVector::QuermassVector(int n, Eigen::VectorXd w) : n_(n), w_(std::move(w)) {
  if (n < 2 || w_.size() != n + 1) throw InputError("quermass vector must hold n+1 values");
}

QuermassVector quermass(const ConvexBody& body) {
  return std::visit(
      [](const auto& b) -> QuermassVector {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polygon2D>) {
          const double a = b.area();
          if (!(a > 0.0)) throw InputError("degenerate polygon: zero area");
          return QuermassVector(2, Eigen::Vector3d(a, 0.5 * b.perimeter(), kPi));
        } else if constexpr (std::is_same_v<T, Polytope3D>) {
          const double v = b.volume();
          if (!(v > 0.0)) throw InputError("degenerate polytope: zero volume");
          return QuermassVector(3, Eigen::Vector4d(v, b.surface_area() / 3.0,
                                                   b.mean_curvature_integral() / 3.0, 4.0 * kPi / 3.0));
        } else {
          Eigen::VectorXd w(b.dim + 1);
          const double om = unit_ball_volume(b.dim);
          for (int i = 0; i <= b.dim; ++i) w(i) = om * std::pow(b.radius, b.dim - i);
          w(b.dim) = om;
          return QuermassVector(b.dim, std::move(w));
        }
      },
      body);
}

double equiv_ball_radius(const QuermassVector& qv, int i) {
  const int n = qv.dim();
  if (i < 0 || i >= n) throw InputError("equiv_ball_radius: index must satisfy 0 <= i <= n-1");
  return std::pow(qv[i] / qv.omega(), 1.0 / (n - i));
}

AfReport af_check(const QuermassVector& qv, double tol) {
  AfReport rep;
  const int n = qv.dim();
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) r[i] = equiv_ball_radius(qv, i);
  rep.min_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = r[j] - r[i];
      rep.entries.push_back({i, j, v});
      rep.min_value = std::min(rep.min_value, v);
      if (v < -tol * std::max(r[i], r[j])) rep.violated = true;
    }
  }
  if (rep.entries.empty()) rep.min_value = 0.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Inradius, inner parallel bodies, Steiner formula

namespace {

template <int Dim>
ChebyshevBall chebyshev_from(const std::vector<Halfspace<Dim>>& hs,
                             const Eigen::Matrix<double, Dim, 1>& interior) {
  const int m = static_cast<int>(hs.size());
  Eigen::MatrixXd A(m, 2 * Dim + 1);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    A.row(i).head(Dim) = hs[i].normal.transpose();
    A.row(i).segment(Dim, Dim) = -hs[i].normal.transpose();
    A(i, 2 * Dim) = hs[i].normal.norm();
    b(i) = hs[i].offset - hs[i].normal.dot(interior);
  }
  if ((b.array() <= 0.0).any()) throw NumericalError("inradius LP: reference point is not interior");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * Dim + 1);
  c(2 * Dim) = 1.0;
  const auto sol = solve_lp(A, b, c);
  ChebyshevBall out;
  out.center = interior + sol.x.head(Dim) - sol.x.segment(Dim, Dim);
  out.radius = sol.x(2 * Dim);
  if (!(out.radius > 0.0)) throw NumericalError("inradius LP returned a non-positive radius");
  return out;
}

}  // namespace

ChebyshevBall chebyshev_ball(const ConvexBody& body) {
  return std::visit(
      [](const auto& b) -> ChebyshevBall {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polygon2D>) {
          Vec2 c = Vec2::Zero();
          for (const auto& v : b.vertices()) c += v;
          return chebyshev_from<2>(b.halfspaces(), c / static_cast<double>(b.size()));
        } else if constexpr (std::is_same_v<T, Polytope3D>) {
          Vec3 c = Vec3::Zero();
          for (const auto& v : b.vertices()) c += v;
          return chebyshev_from<3>(b.halfspaces(), c / static_cast<double>(b.vertices().size()));
        } else {
          return ChebyshevBall{Eigen::VectorXd::Zero(b.dim), b.radius};
        }
      },
      body);
}

double inradius(const ConvexBody& body) { return chebyshev_ball(body).radius; }

ConvexBody inner_parallel(const ConvexBody& body, double t) {
  if (!(t >= 0.0)) throw InputError("inner_parallel: offset must be nonnegative");
  if (t == 0.0) return body;
  return std::visit(
      [t](const auto& b) -> ConvexBody {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polygon2D>) {
          const double d = b.diameter();
          auto loop = detail::clean_loop(detail::clip_offset(b, t), d);
          if (loop.size() < 3 || detail::loop_area(loop) <= 1e-14 * d * d) {
            throw InputError("inner_parallel: offset reaches the inradius, Omega_t is empty");
          }
          return Polygon2D(std::move(loop));
        } else if constexpr (std::is_same_v<T, Polytope3D>) {
          auto hs = b.halfspaces();
          for (auto& h : hs) h.offset -= t;
          try {
            return Polytope3D::from_halfspaces(hs);
          } catch (const InputError&) {
            throw InputError("inner_parallel: offset reaches the inradius, Omega_t is empty");
          }
        } else {
          if (t >= b.radius) throw InputError("inner_parallel: offset reaches the inradius, Omega_t is empty");
          return Ball(b.dim, b.radius - t);
        }
      },
      body);
}

double steiner_outer(const ConvexBody& body, double rho) {
  if (!(rho >= 0.0)) throw InputError("steiner_outer: radius must be nonnegative");
  return std::visit(
      [rho](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Polygon2D>) {
          // Edge rectangles plus the circular sectors at the vertices.
          const auto& v = b.vertices();
          const std::size_t m = v.size();
          double sectors = 0.0;
          for (std::size_t i = 0; i < m; ++i) {
            const Vec2 e1 = v[i] - v[(i + m - 1) % m];
            const Vec2 e2 = v[(i + 1) % m] - v[i];
            sectors += std::atan2(cross2(e1, e2), e1.dot(e2));
          }
          return b.area() + b.perimeter() * rho + 0.5 * sectors * rho * rho;
        } else if constexpr (std::is_same_v<T, Polytope3D>) {
          return b.volume() + b.surface_area() * rho + b.mean_curvature_integral() * rho * rho +
                 4.0 * kPi / 3.0 * rho * rho * rho;
        } else {
          return unit_ball_volume(b.dim) * std::pow(b.radius + rho, b.dim);
        }
      },
      body);
}

// ---------------------------------------------------------------------------
// Random polygons

Polygon2D random_polygon(std::uint64_t seed, int vertex_count, AspectBounds aspect) {
  if (vertex_count < 3) throw InputError("random_polygon: vertex_count must be at least 3");
  if (!(aspect.min > 0.0) || aspect.max < aspect.min || aspect.max > 1.0) {
    throw InputError("random_polygon: aspect bounds must satisfy 0 < min <= max <= 1");
  }
  std::mt19937_64 gen(seed);
  // Explicit 53-bit conversion: the distribution classes are not portable.
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  const double min_gap = 0.25 * 2.0 * kPi / vertex_count;
  for (int attempt = 0; attempt < 100; ++attempt) {
    // One jittered angle per sector, so the gap test rarely rejects.
    std::vector<double> angles(vertex_count);
    const double offset = 2.0 * kPi * uniform();
    for (int i = 0; i < vertex_count; ++i) {
      angles[i] = offset + 2.0 * kPi * (i + 0.5 + 0.7 * (uniform() - 0.5)) / vertex_count;
    }
    const double ratio = aspect.min + (aspect.max - aspect.min) * uniform();
    const double rot = 2.0 * kPi * uniform();
    std::sort(angles.begin(), angles.end());
    bool ok = true;
    for (int i = 0; i < vertex_count; ++i) {
      const double next = i + 1 < vertex_count ? angles[i + 1] : angles[0] + 2.0 * kPi;
      const double gap = next - angles[i];
      if (gap < min_gap || gap > 0.75 * kPi) ok = false;
    }
    if (!ok) continue;
    const double c = std::cos(rot), s = std::sin(rot);
    std::vector<Vec2> pts;
    for (double a : angles) {
      const Vec2 p(std::cos(a), ratio * std::sin(a));
      pts.emplace_back(c * p.x() - s * p.y(), s * p.x() + c * p.y());
    }
    const double scale = 1.0 / std::sqrt(detail::loop_area(pts));
    for (auto& p : pts) p *= scale;
    try {
      return Polygon2D(std::move(pts));
    } catch (const InputError&) {
      continue;
    }
  }
  throw InputError("random_polygon: hull stayed degenerate after 100 resamples");
}

}  // namespace hessbound
