#include "hessbound/lp.hpp"

#include <limits>

#include "hessbound/core.hpp"

namespace hessbound {

LpSolution solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m || c.size() != n) throw InputError("solve_lp: dimension mismatch");
  if ((b.array() < 0.0).any()) throw NumericalError("solve_lp: origin is infeasible (negative rhs)");

  // Columns: n structural, m slack, 1 rhs. Last row holds reduced costs.
  Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  tab.topLeftCorner(m, n) = A;
  tab.block(0, n, m, m).setIdentity();
  tab.col(n + m).head(m) = b;
  tab.row(m).head(n) = -c.transpose();
  Eigen::VectorXi basis(m);
  for (Eigen::Index i = 0; i < m; ++i) basis(i) = static_cast<int>(n + i);

  const double eps = 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff());
  const int max_pivots = 50 * static_cast<int>(n + m) + 100;
  for (int pivot = 0; pivot < max_pivots; ++pivot) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (tab(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      LpSolution sol;
      sol.x = Eigen::VectorXd::Zero(n);
      for (Eigen::Index i = 0; i < m; ++i) {
        if (basis(i) < n) sol.x(basis(i)) = tab(i, n + m);
      }
      sol.objective = c.dot(sol.x);
      return sol;
    }
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab(i, enter) > eps) {
        const double ratio = tab(i, n + m) / tab(i, enter);
        if (ratio < best - 1e-15 || (ratio <= best + 1e-15 && leave >= 0 && basis(i) < basis(leave))) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
    }
    if (leave < 0) throw NumericalError("solve_lp: objective is unbounded");
    tab.row(leave) /= tab(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && tab(i, enter) != 0.0) tab.row(i) -= tab(i, enter) * tab.row(leave);
    }
    basis(leave) = static_cast<int>(enter);
  }
  throw NumericalError("solve_lp: pivot limit reached");
}

}  // namespace hessbound
