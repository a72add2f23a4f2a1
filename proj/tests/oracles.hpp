#pragma once

// Reference values computed independently of the library.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

inline double cauchy_cdf(double x) { return 0.5 + std::atan(x) / std::numbers::pi; }
inline double cauchy_sf(double x) { return x > 0 ? std::atan(1.0 / x) / std::numbers::pi : 1.0 - cauchy_cdf(x); }
// Variance-2 normal: the symmetric stable law with alpha = 2, scale 1.
inline double gauss_cdf(double x) { return 0.5 * std::erfc(-x / 2.0); }

// Survival of the standard symmetric stable law for 1 < alpha < 2 and x > 0,
// from the non-oscillatory integral representation over theta in (0, pi/2).
inline double stable_sf(double x, double alpha, double tol = 1e-15) {
  const double power = alpha / (alpha - 1.0);
  const double scale = std::pow(x, power);
  // phi = pi/2 - theta, so cos(theta) = sin(phi) keeps full precision near pi/2.
  const double half_pi = std::numbers::pi / 2.0;
  auto f = [&](double phi) {
    const double c = std::sin(phi);
    const double s = std::sin(alpha * (half_pi - phi));
    if (c <= 0.0 || s <= 0.0) return 0.0;
    const double v = std::pow(c / s, power) * std::cos((alpha - 1.0) * (half_pi - phi)) / c;
    return std::exp(-scale * v);
  };
  // For large x the mass sits close to phi = 0; dyadic pieces towards it.
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double total = 0.0;
  double gap = half_pi;
  for (int k = 0; k < 80 && gap > tol * total; ++k) {
    const double next = 0.5 * gap;
    // On the unit interval, where the quadrature error estimate is meaningful.
    const double width = gap - next;
    total += width * GK::integrate([&](double s) { return f(next + width * s); }, 0.0, 1.0, 10, tol);
    gap = next;
  }
  return total / std::numbers::pi;
}

inline double stable_cdf(double x, double alpha) {
  if (x == 0.0) return 0.5;
  return x > 0.0 ? 1.0 - stable_sf(x, alpha) : stable_sf(-x, alpha);
}

}  // namespace oracle
