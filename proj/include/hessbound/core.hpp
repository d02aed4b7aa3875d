#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hessbound {

// Malformed or out-of-range input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that failed to converge or produced an inconsistent state.
// The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lebesgue measure of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
inline double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

}  // namespace hessbound
