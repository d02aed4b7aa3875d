#pragma once

// k-Hessian algebra: elementary symmetric functions of Hessian eigenvalues,
// the radial reduction of S_k and the normalized Newton chain.

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "hessbound/core.hpp"

namespace hessbound {

/// Returns (S_0, S_1, ..., S_kmax) of the entries of `eig`.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> elementary_symmetric(
    const Eigen::MatrixBase<Derived>& eig, int kmax) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> s =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(kmax + 1);
  s(0) = Scalar(1);
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    for (int j = kmax; j >= 1; --j) s(j) += eig(i) * s(j - 1);
  }
  return s;
}

/// S_k of the Hessian of a radial function phi(|x|) in R^n. The Hessian has
/// eigenvalue d2phi once and dphi/r with multiplicity n-1; at r = 0 all n
/// eigenvalues coincide with d2phi.
template <typename Scalar>
Scalar sk_radial(Scalar /*phi*/, Scalar dphi, Scalar d2phi, Scalar r, int n, int k) {
  using std::pow;
  if (r == Scalar(0)) return Scalar(binomial(n, k)) * pow(d2phi, k);
  const Scalar psi = dphi / r;
  return Scalar(binomial(n - 1, k)) * pow(psi, k) +
         Scalar(binomial(n - 1, k - 1)) * pow(psi, k - 1) * d2phi;
}

/// Normalized Newton chain (S_j / C(n,j))^{1/j}, j = 1..k. Entries with a
/// negative S_j are returned as NaN.
template <typename Derived>
std::vector<typename Derived::Scalar> newton_chain(const Eigen::MatrixBase<Derived>& eig, int k) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(eig.size());
  const auto s = elementary_symmetric(eig, k);
  std::vector<Scalar> chain;
  chain.reserve(k);
  for (int j = 1; j <= k; ++j) {
    const Scalar v = s(j) / Scalar(binomial(n, j));
    chain.push_back(v < Scalar(0) ? Scalar(NAN) : std::pow(v, Scalar(1) / Scalar(j)));
  }
  return chain;
}

}  // namespace hessbound
