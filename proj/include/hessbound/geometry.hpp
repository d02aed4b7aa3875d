#pragma once

// Convex bodies, quermassintegrals, inradius and inner parallel bodies.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "hessbound/core.hpp"

namespace hessbound {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// Closed halfspace {x : normal . x <= offset} with unit outward normal.
template <int Dim>
struct Halfspace {
  Eigen::Matrix<double, Dim, 1> normal;
  double offset = 0.0;

  double signed_distance(const Eigen::Matrix<double, Dim, 1>& x) const {
    return normal.dot(x) - offset;
  }
};

/// Convex polygon with vertices in strictly counterclockwise order.
///
/// Construction validates that consecutive edge cross products are positive
/// after normalizing coordinates to unit diameter (threshold 1e-12), which
/// rules out clockwise input, repeated points and collinear triples.
class Polygon2D {
 public:
  explicit Polygon2D(std::vector<Vec2> vertices);

  /// Accepts either orientation and reverses clockwise input.
  static Polygon2D from_vertices(std::vector<Vec2> vertices);
  static Polygon2D rectangle(double width, double height);
  static Polygon2D regular(int count, double circumradius);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  std::vector<Halfspace<2>> halfspaces() const;

  double area() const;
  double perimeter() const;
  double diameter() const;

 private:
  std::vector<Vec2> vertices_;
};

/// Full-dimensional convex polytope in R^3 with matching vertex and facet
/// descriptions.
class Polytope3D {
 public:
  struct Face {
    Vec3 normal;
    double offset = 0.0;
    std::vector<int> loop;  // counterclockwise seen from outside
    int source = -1;        // index of the generating halfspace, if any
  };
  struct Edge {
    int a = -1, b = -1;
    int left = -1, right = -1;  // adjacent faces
  };

  /// Convex hull of a point cloud. Points interior to the hull are dropped.
  static Polytope3D from_vertices(const std::vector<Vec3>& points);
  /// Bounded intersection of halfspaces. Redundant halfspaces produce no
  /// facet; a halfspace's facet records its index in `Face::source`.
  static Polytope3D from_halfspaces(const std::vector<Halfspace<3>>& halfspaces);
  static Polytope3D box(double a, double b, double c);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<Halfspace<3>> halfspaces() const;

  double volume() const;
  double surface_area() const;
  /// Integral mean curvature M = 1/2 sum over edges of length * exterior
  /// dihedral angle.
  double mean_curvature_integral() const;
  double diameter() const;

 private:
  static Polytope3D assemble(std::vector<Vec3> points, const std::vector<Halfspace<3>>& planes,
                             double scale);
  void validate(double scale) const;

  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
};

/// Euclidean ball of radius `radius` in R^dim centered at the origin.
struct Ball {
  int dim = 2;
  double radius = 1.0;

  Ball(int dim, double radius);
};

using ConvexBody = std::variant<Polygon2D, Polytope3D, Ball>;

int dimension(const ConvexBody& body);
std::string describe(const ConvexBody& body);
/// Dilation x -> s x about the origin.
ConvexBody scaled(const ConvexBody& body, double s);

/// Quermassintegrals W_0..W_n of a body of dimension n.
class QuermassVector {
 public:
  QuermassVector() = default;
  QuermassVector(int n, Eigen::VectorXd w);

  int dim() const { return n_; }
  const Eigen::VectorXd& values() const { return w_; }
  double operator[](int i) const { return w_(i); }
  double omega() const { return unit_ball_volume(n_); }
  double volume() const { return w_(0); }
  double perimeter() const { return n_ * w_(1); }

 private:
  int n_ = 0;
  Eigen::VectorXd w_;
};

/// Polygon: (area, perimeter/2, pi). Polytope: (volume, surface/3, M/3,
/// 4 pi/3). Ball: w[i] = omega_n R^{n-i}.
QuermassVector quermass(const ConvexBody& body);

struct AfEntry {
  int i = 0, j = 0;
  double value = 0.0;  // R_j - R_i with R_i = (W_i/omega_n)^{1/(n-i)}
};

struct AfReport {
  std::vector<AfEntry> entries;
  double min_value = 0.0;
  bool violated = false;
};

/// Aleksandrov-Fenchel differences for all 0 <= i < j <= n-1. A difference
/// below -tol (relative to the larger radius) flags a violation.
AfReport af_check(const QuermassVector& qv, double tol = 1e-9);

/// Radius of the centered ball sharing W_i with the body.
double equiv_ball_radius(const QuermassVector& qv, int i);

struct ChebyshevBall {
  Eigen::VectorXd center;
  double radius = 0.0;
};

/// Largest inscribed ball, by linear programming over the facet description.
ChebyshevBall chebyshev_ball(const ConvexBody& body);
double inradius(const ConvexBody& body);

/// Omega_t = {x : dist(x, boundary) > t}, computed by intersecting the facet
/// halfspaces translated inward by t. Throws InputError when t >= r_Omega.
ConvexBody inner_parallel(const ConvexBody& body, double t);

/// Volume of the outer parallel body K + rho B_1.
double steiner_outer(const ConvexBody& body, double rho);

struct AspectBounds {
  double min = 0.3;
  double max = 1.0;
};

/// Deterministic random convex polygon with exactly `vertex_count`
/// vertices, rescaled to unit area. Same seed, same polygon on every
/// platform.
Polygon2D random_polygon(std::uint64_t seed, int vertex_count, AspectBounds aspect = {});

namespace detail {

/// Offset clip of a polygon without validation; may return fewer than three
/// points or a degenerate loop.
std::vector<Vec2> clip_offset(const Polygon2D& polygon, double t);
/// Drops repeated and collinear vertices; `scale` is the reference length.
std::vector<Vec2> clean_loop(const std::vector<Vec2>& loop, double scale);
double loop_area(const std::vector<Vec2>& loop);
double loop_perimeter(const std::vector<Vec2>& loop);

}  // namespace detail

}  // namespace hessbound
