#pragma once

// Random generators shared by the unit and acceptance suites.

#include <cmath>
#include <numbers>
#include <random>

#include "stdisc/geometry.hpp"

namespace stdisc::testing {

inline Point2 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Point2 d{{g(rng), g(rng)}, {g(rng), g(rng)}};
  return cplx(1.0 / norm(d)) * d;
}

/// Exterior point with |p| uniform in (lo, hi).
inline ExteriorPoint random_exterior(std::mt19937_64& rng, double lo = 1.05, double hi = 5.0) {
  std::uniform_real_distribution<double> r(lo, hi);
  return ExteriorPoint(cplx(r(rng)) * random_direction(rng));
}

/// Interior point with |z| <= max_radius, uniform in volume.
inline Point2 random_interior(std::mt19937_64& rng, double max_radius = 0.95) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return cplx(max_radius * std::pow(u(rng), 0.25)) * random_direction(rng);
}

inline cplx random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, a(rng));
}

inline cplx random_in_disc(std::mt19937_64& rng, double max_radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::sqrt(u(rng)) * max_radius * random_unit(rng);
}

}  // namespace stdisc::testing
