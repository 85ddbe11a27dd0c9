#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "confnat/moebius.hpp"

namespace confnat {

/**
 * Integral of f over the unit disc against Euclidean area, for f a density-like function of
 * disc_point.
 *
 * Polar grid: the angle uses the trapezoid rule (geometric convergence for smooth periodic
 * integrands); the radius is substituted r = sin(phi), which removes the (1 - r^2)^(-1/2)
 * boundary behaviour of the heaviest-tailed laws, and integrated by 20-point Gauss-Legendre on
 * equal panels of phi in [0, pi/2].
 */
template <class F>
double integrate_disc(F&& f, std::size_t radial_panels = 64, std::size_t angular_nodes = 512,
                      double radius = 1.0) {
  const double phi_max = radius >= 1.0 ? std::numbers::pi / 2 : std::asin(radius);
  const double width = phi_max / static_cast<double>(radial_panels);
  const double dt = two_pi / static_cast<double>(angular_nodes);

  const auto ring = [&](double phi) {
    const double r = std::sin(phi);
    double sum = 0.0;
    for (std::size_t j = 0; j < angular_nodes; ++j) {
      sum += f(disc_point::clamped(std::polar(r, dt * static_cast<double>(j))));
    }
    // r dr = sin(phi) cos(phi) dphi
    return sum * dt * r * std::cos(phi);
  };

  double total = 0.0;
  for (std::size_t k = 0; k < radial_panels; ++k) {
    const double lo = width * static_cast<double>(k);
    total += boost::math::quadrature::gauss<double, 20>::integrate(ring, lo, lo + width);
  }
  return total;
}

}  // namespace confnat
