#include "hessbound/pderef.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

namespace hessbound {

namespace {

constexpr int kDi[4] = {1, -1, 0, 0};
constexpr int kDj[4] = {0, 0, 1, -1};

// Distance from p along unit direction e to the polygon boundary, for p
// inside a convex polygon.
double ray_exit(const std::vector<Halfspace<2>>& hs, const Vec2& p, const Vec2& e) {
  double t = std::numeric_limits<double>::infinity();
  for (const auto& H : hs) {
    const double ne = H.normal.dot(e);
    if (ne <= 0.0) continue;
    t = std::min(t, (H.offset - H.normal.dot(p)) / ne);
  }
  return t;
}

}  // namespace

GridDomain::GridDomain(const Polygon2D& polygon, double h) : polygon_(polygon), h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InputError("grid spacing must be positive");
  Vec2 lo = polygon.vertices().front(), hi = lo;
  for (const auto& v : polygon.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  origin_ = lo;
  nx_ = static_cast<int>(std::ceil((hi.x() - lo.x()) / h - 1e-9));
  ny_ = static_cast<int>(std::ceil((hi.y() - lo.y()) / h - 1e-9));
  if (static_cast<double>(nx_ + 1) * (ny_ + 1) > 6e7) throw InputError("grid is too fine for this domain");

  const auto hs = polygon.halfspaces();
  const double inside_tol = 1e-10 * h;
  lookup_.assign(static_cast<std::size_t>(nx_ + 1) * (ny_ + 1), -1);
  for (int j = 0; j <= ny_; ++j) {
    for (int i = 0; i <= nx_; ++i) {
      const Vec2 p = origin_ + h * Vec2(i, j);
      double s = -std::numeric_limits<double>::infinity();
      for (const auto& H : hs) s = std::max(s, H.signed_distance(p));
      if (s < -inside_tol) {
        lookup_[static_cast<std::size_t>(j) * (nx_ + 1) + i] = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{i, j, {}, {}});
      }
    }
  }
  if (nodes_.empty()) throw InputError("grid has no interior nodes; decrease h");

  const Vec2 dirs[4] = {Vec2(1, 0), Vec2(-1, 0), Vec2(0, 1), Vec2(0, -1)};
  for (auto& node : nodes_) {
    const Vec2 p = origin_ + h * Vec2(node.i, node.j);
    for (int d = 0; d < 4; ++d) {
      const int nb = index(node.i + kDi[d], node.j + kDj[d]);
      node.nb[d] = nb;
      node.arm[d] = nb >= 0 ? h : std::clamp(ray_exit(hs, p, dirs[d]), 1e-300, h);
    }
  }

  // Acute corners can leave small pockets of nodes whose arms all end on the
  // boundary. The stencil never couples them to the rest of the grid, so
  // only the largest component is kept.
  std::vector<int> label(nodes_.size(), -1);
  std::vector<std::size_t> sizes;
  for (std::size_t seed = 0; seed < nodes_.size(); ++seed) {
    if (label[seed] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    std::size_t count = 0;
    std::queue<int> queue;
    queue.push(static_cast<int>(seed));
    label[seed] = id;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      ++count;
      for (int d = 0; d < 4; ++d) {
        const int v = nodes_[u].nb[d];
        if (v >= 0 && label[v] < 0) {
          label[v] = id;
          queue.push(v);
        }
      }
    }
    sizes.push_back(count);
  }
  if (sizes.size() > 1) {
    const int keep = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    if (sizes[keep] < 0.9 * nodes_.size()) throw InputError("grid mask is fragmented; decrease h");
    std::vector<int> remap(nodes_.size(), -1);
    std::vector<Node> kept;
    for (std::size_t u = 0; u < nodes_.size(); ++u) {
      if (label[u] == keep) {
        remap[u] = static_cast<int>(kept.size());
        kept.push_back(nodes_[u]);
      }
    }
    for (auto& node : kept) {
      for (int& nb : node.nb) nb = nb >= 0 ? remap[nb] : -1;
    }
    for (auto& l : lookup_) l = l >= 0 ? remap[l] : -1;
    dropped_ = static_cast<int>(nodes_.size() - kept.size());
    nodes_ = std::move(kept);
  }
}

int GridDomain::index(int i, int j) const {
  if (i < 0 || j < 0 || i > nx_ || j > ny_) return -1;
  return lookup_[static_cast<std::size_t>(j) * (nx_ + 1) + i];
}

Vec2 GridDomain::position(int unknown) const {
  return origin_ + h_ * Vec2(nodes_[unknown].i, nodes_[unknown].j);
}

Eigen::SparseMatrix<double> GridDomain::neg_laplacian() const {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(nodes_.size() * 5);
  for (int u = 0; u < unknowns(); ++u) {
    const Node& node = nodes_[u];
    double diag = 0.0;
    for (int axis = 0; axis < 2; ++axis) {
      const double hp = node.arm[2 * axis], hm = node.arm[2 * axis + 1];
      const double cp = 2.0 / (hp * (hp + hm));
      const double cm = 2.0 / (hm * (hp + hm));
      diag += cp + cm;
      if (node.nb[2 * axis] >= 0) trip.emplace_back(u, node.nb[2 * axis], -cp);
      if (node.nb[2 * axis + 1] >= 0) trip.emplace_back(u, node.nb[2 * axis + 1], -cm);
    }
    trip.emplace_back(u, u, diag);
  }
  Eigen::SparseMatrix<double> A(unknowns(), unknowns());
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  return A;
}

GridFunction exact_distance(std::shared_ptr<const GridDomain> domain) {
  const auto& verts = domain->polygon().vertices();
  const std::size_t m = verts.size();
  GridFunction out{domain, Eigen::VectorXd(domain->unknowns())};
  for (int u = 0; u < domain->unknowns(); ++u) {
    const Vec2 p = domain->position(u);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < m; ++e) {
      const Vec2& a = verts[e];
      const Vec2& b = verts[(e + 1) % m];
      const Vec2 ab = b - a;
      const double s = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
      best = std::min(best, (p - a - s * ab).norm());
    }
    out.values(u) = best;
  }
  return out;
}

DepsResult solve_deps(std::shared_ptr<const GridDomain> domain, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InputError("eps must be positive");
  if (domain->h() > eps / 4.0 * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "resolution guard: h = " << domain->h() << " exceeds eps/4 = " << eps / 4.0;
    throw InputError(msg.str());
  }
  Eigen::SparseMatrix<double> M = domain->neg_laplacian() * (eps * eps);
  for (int u = 0; u < domain->unknowns(); ++u) M.coeffRef(u, u) += 1.0;
  const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(domain->unknowns(), -1.0);

  Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> solver;
  solver.preconditioner().setDroptol(1e-4);
  solver.setTolerance(1e-13);
  solver.setMaxIterations(5000);
  solver.compute(M);
  if (solver.info() != Eigen::Success) throw NumericalError("solve_deps: preconditioner setup failed");
  Eigen::VectorXd z = solver.solve(rhs);
  if (solver.info() != Eigen::Success) throw NumericalError("solve_deps: BiCGSTAB did not converge");

  DepsResult out;
  out.eps = eps;
  out.residual = (M * z - rhs).norm() / rhs.norm();
  out.iterations = static_cast<int>(solver.iterations());
  if (out.residual > 1e-10) throw NumericalError("solve_deps: residual above 1e-10");
  if (z.minCoeff() <= -1.0) throw NumericalError("solve_deps: z <= -1 at some node");
  Eigen::VectorXd w(z.size());
  for (int u = 0; u < z.size(); ++u) w(u) = -eps * std::log1p(z(u));
  out.z = GridFunction{domain, std::move(z)};
  out.w = GridFunction{domain, std::move(w)};
  return out;
}

DepsDiagnostics diagnose_deps(const DepsResult& deps) {
  const auto& dom = *deps.w.domain;
  const auto d = exact_distance(deps.w.domain);
  const Eigen::VectorXd& w = deps.w.values;
  DepsDiagnostics out;
  out.min_value = w.minCoeff();
  out.max_excess = (w - d.values).maxCoeff();
  out.sup_gap = (w - d.values).cwiseAbs().maxCoeff();
  out.max_second_difference = -std::numeric_limits<double>::infinity();
  auto val = [&](int nb) { return nb >= 0 ? w(nb) : 0.0; };
  for (int u = 0; u < dom.unknowns(); ++u) {
    double grad2 = 0.0;
    for (int axis = 0; axis < 2; ++axis) {
      const double hp = dom.arm(u, 2 * axis), hm = dom.arm(u, 2 * axis + 1);
      const double up = val(dom.neighbour(u, 2 * axis)), um = val(dom.neighbour(u, 2 * axis + 1));
      const double g = (hm * hm * (up - w(u)) + hp * hp * (w(u) - um)) / (hp * hm * (hp + hm));
      grad2 += g * g;
      const double second = 2.0 * ((up - w(u)) / hp - (w(u) - um) / hm) / (hp + hm);
      out.max_second_difference = std::max(out.max_second_difference, second);
    }
    out.max_gradient = std::max(out.max_gradient, std::sqrt(grad2));
    const double zr = std::expm1(-w(u) / deps.eps);
    out.reconstruction_error = std::max(out.reconstruction_error, std::abs(zr - deps.z.values(u)));
  }
  out.gradient_constant = (out.max_gradient - 1.0) / dom.h();
  return out;
}

EigenResult dirichlet_eigen(std::shared_ptr<const GridDomain> domain, int max_iterations, double tol) {
  const auto A = domain->neg_laplacian();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) throw NumericalError("dirichlet_eigen: factorization failed");
  Eigen::VectorXd x = Eigen::VectorXd::Ones(domain->unknowns());
  double lambda = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXd y = lu.solve(x);
    const double ymax = y.cwiseAbs().maxCoeff();
    if (!(ymax > 0.0) || !std::isfinite(ymax)) throw NumericalError("dirichlet_eigen: breakdown");
    const double next = x.cwiseAbs().maxCoeff() / ymax;
    x = y / ymax;
    if (it > 1 && std::abs(next - lambda) <= tol * next) {
      // Rayleigh-type estimate for the converged vector.
      const Eigen::VectorXd Ax = A * x;
      EigenResult out;
      out.lambda = x.dot(Ax) / x.squaredNorm();
      if (std::abs(out.lambda - next) > 1e-9 * next) out.lambda = next;
      out.iterations = it;
      if (x.sum() < 0) x = -x;
      out.mode = GridFunction{domain, x / x.maxCoeff()};
      return out;
    }
    lambda = next;
  }
  throw NumericalError("dirichlet_eigen: inverse iteration did not converge");
}

FdEigenEstimate fd_laplace_eigen(const Polygon2D& polygon, double h) {
  auto fine = std::make_shared<const GridDomain>(polygon, h);
  auto coarse = std::make_shared<const GridDomain>(polygon, 2.0 * h);
  auto ef = dirichlet_eigen(fine);
  const auto ec = dirichlet_eigen(coarse);
  FdEigenEstimate out;
  out.h = h;
  out.lambda_h = ef.lambda;
  out.lambda_2h = ec.lambda;
  out.lambda = (4.0 * ef.lambda - ec.lambda) / 3.0;
  out.error_estimate = std::abs(out.lambda - ef.lambda);
  out.mode = std::move(ef.mode);
  return out;
}

void write_csv(std::ostream& out, const GridFunction& f) {
  const auto& dom = *f.domain;
  out << "i,j,x,y,value\n";
  out.precision(12);
  for (int u = 0; u < dom.unknowns(); ++u) {
    const Vec2 p = dom.position(u);
    out << dom.node_i(u) << ',' << dom.node_j(u) << ',' << p.x() << ',' << p.y() << ',' << f.values(u)
        << '\n';
  }
}

void write_pgm(std::ostream& out, const GridFunction& f) {
  const auto& dom = *f.domain;
  const double lo = std::min(0.0, f.values.minCoeff());
  const double hi = std::max(lo + 1e-300, f.values.maxCoeff());
  const int w = dom.nx() + 1, h = dom.ny() + 1;
  std::vector<unsigned char> pix(static_cast<std::size_t>(w) * h, 0);
  for (int u = 0; u < dom.unknowns(); ++u) {
    const double s = (f.values(u) - lo) / (hi - lo);
    // Image rows run top to bottom.
    pix[static_cast<std::size_t>(h - 1 - dom.node_j(u)) * w + dom.node_i(u)] =
        static_cast<unsigned char>(std::lround(255.0 * std::clamp(s, 0.0, 1.0)));
  }
  out << "P5\n" << w << ' ' << h << "\n255\n";
  out.write(reinterpret_cast<const char*>(pix.data()), static_cast<std::streamsize>(pix.size()));
}

}  // namespace hessbound
