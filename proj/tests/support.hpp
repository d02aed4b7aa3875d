#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hessbound/geometry.hpp"

namespace testing_support {

inline constexpr double kPi = 3.14159265358979323846;

inline std::string data_path(const std::string& name) { return std::string(HESSBOUND_TEST_DATA) + "/" + name; }

// Polygons used by the property suites: varied vertex counts and aspect.
inline hessbound::Polygon2D corpus_polygon(int i) {
  return hessbound::random_polygon(1000 + i, 3 + i % 10, {0.2, 1.0});
}

// Convex hull of points on a perturbed ellipsoid.
inline hessbound::Polytope3D random_polytope(unsigned seed, int count) {
  std::mt19937_64 gen(seed);
  auto u = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<hessbound::Vec3> pts;
  for (int i = 0; i < count; ++i) {
    const double z = 2.0 * u() - 1.0, a = 2.0 * kPi * u();
    const double s = std::sqrt(1.0 - z * z);
    pts.emplace_back(1.3 * s * std::cos(a), 0.9 * s * std::sin(a), 0.7 * z);
  }
  return hessbound::Polytope3D::from_vertices(pts);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing_support
