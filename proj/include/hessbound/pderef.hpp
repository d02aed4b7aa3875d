#pragma once

// Finite-difference reference computations on convex polygons: the viscous
// regularization of the distance function and a Dirichlet Laplacian
// eigenvalue for k = 1.

#include <iosfwd>
#include <memory>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "hessbound/geometry.hpp"

namespace hessbound {

/// Uniform grid x = origin + (i, j) h over the bounding box of a polygon.
/// Unknowns are the nodes strictly inside; for each of them the four arm
/// lengths to the next node or to the boundary (Shortley-Weller) are stored.
/// The unknowns form one 4-connected component.
class GridDomain {
 public:
  GridDomain(const Polygon2D& polygon, double h);

  const Polygon2D& polygon() const { return polygon_; }
  double h() const { return h_; }
  const Vec2& origin() const { return origin_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int unknowns() const { return static_cast<int>(nodes_.size()); }
  /// Interior nodes left out because they are cut off from the main
  /// component (isolated corner pockets).
  int dropped() const { return dropped_; }

  /// Unknown index of node (i, j), or -1 outside the mask.
  int index(int i, int j) const;
  Vec2 position(int unknown) const;
  int node_i(int unknown) const { return nodes_[unknown].i; }
  int node_j(int unknown) const { return nodes_[unknown].j; }
  /// Arm length in direction d (0:+x, 1:-x, 2:+y, 3:-y), and the neighbour
  /// unknown or -1 when the arm ends on the boundary.
  double arm(int unknown, int d) const { return nodes_[unknown].arm[d]; }
  int neighbour(int unknown, int d) const { return nodes_[unknown].nb[d]; }

  /// Negative Shortley-Weller Laplacian with homogeneous Dirichlet data.
  Eigen::SparseMatrix<double> neg_laplacian() const;

 private:
  struct Node {
    int i, j;
    double arm[4];
    int nb[4];
  };
  Polygon2D polygon_;
  double h_;
  Vec2 origin_;
  int nx_ = 0, ny_ = 0;
  int dropped_ = 0;
  std::vector<int> lookup_;
  std::vector<Node> nodes_;
};

/// Values on the unknowns of a grid; zero on the boundary by convention.
struct GridFunction {
  std::shared_ptr<const GridDomain> domain;
  Eigen::VectorXd values;
};

GridFunction exact_distance(std::shared_ptr<const GridDomain> domain);

struct DepsResult {
  double eps = 0.0;
  GridFunction z;  // solution of eps^2 Lap z - z = 1, z = 0 on the boundary
  GridFunction w;  // d_eps = -eps log(1 + z)
  double residual = 0.0;
  int iterations = 0;
};

/// Viscous approximation of the distance function. Requires h <= eps/4.
DepsResult solve_deps(std::shared_ptr<const GridDomain> domain, double eps);

struct DepsDiagnostics {
  double min_value = 0.0;      // min d_eps
  double max_excess = 0.0;     // max (d_eps - d)
  double sup_gap = 0.0;        // max |d_eps - d|
  double max_gradient = 0.0;   // max |D d_eps|, second-order differences
  double gradient_constant = 0.0;  // (max_gradient - 1) / h
  double max_second_difference = 0.0;  // along the four grid directions
  double reconstruction_error = 0.0;   // max |z - expm1(-w/eps)|
};

DepsDiagnostics diagnose_deps(const DepsResult& deps);

struct EigenResult {
  double lambda = 0.0;
  GridFunction mode;  // positive, max-normalized
  int iterations = 0;
};

/// Smallest eigenvalue of the discrete Dirichlet Laplacian on one grid, by
/// inverse power iteration with shift 0.
EigenResult dirichlet_eigen(std::shared_ptr<const GridDomain> domain, int max_iterations = 500,
                            double tol = 1e-13);

struct FdEigenEstimate {
  double lambda = 0.0;  // Richardson extrapolation (4 lambda_h - lambda_2h)/3
  double lambda_h = 0.0;
  double lambda_2h = 0.0;
  double error_estimate = 0.0;  // |lambda - lambda_h|
  double h = 0.0;
  GridFunction mode;
};

FdEigenEstimate fd_laplace_eigen(const Polygon2D& polygon, double h);

void write_csv(std::ostream& out, const GridFunction& f);
/// 8-bit binary PGM, linearly scaled from [min, max] to [0, 255].
void write_pgm(std::ostream& out, const GridFunction& f);

}  // namespace hessbound
