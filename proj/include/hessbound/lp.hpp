#pragma once

#include <Eigen/Core>

namespace hessbound {

struct LpSolution {
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// Maximizes c.x subject to A x <= b and x >= 0, for b >= 0 (so that the
/// origin is feasible). Dense tableau simplex with Bland's rule. Throws
/// NumericalError when the problem is unbounded or b has a negative entry.
LpSolution solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace hessbound
