#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "confnat/errors.hpp"

namespace confnat {

namespace detail {

// Sums sum_k c_k x^k where c_0 = 1 and c_{k+1} / c_k = ((shift + k) / (k + 1))^2. Stops once the
// geometric bound on the remaining tail falls below 1e-16 of the partial sum. On the direct
// series the term ratios decrease towards x; on the Euler-transformed one they increase towards
// x, so max(ratio, x) bounds every later ratio in both cases.
inline double squared_pochhammer_series(double shift, double x) {
  constexpr std::size_t max_terms = 1'000'000;
  double term = 1.0;
  double sum = 1.0;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const double q = (shift + static_cast<double>(k)) / (static_cast<double>(k) + 1.0);
    const double ratio = q * q * x;
    term *= ratio;
    sum += term;
    if (term == 0.0) return sum;
    const double bound = std::max(ratio, x);
    if (bound < 1.0 && term * bound / (1.0 - bound) <= 1e-16 * sum) return sum;
  }
  throw numeric_error("hyp2f1_aa1: series did not converge within 10^6 terms (x = " +
                      std::to_string(x) + ")");
}

}  // namespace detail

/// Argument above which hyp2f1_aa1 switches to the Euler transformation.
inline constexpr double euler_crossover = 0.9;

/**
 * Gauss hypergeometric function 2F1(alpha, alpha; 1; x) for alpha > 1 and 0 <= x < 1, as the
 * power series with coefficients ((alpha)_k / k!)^2.
 *
 * For x > 0.9 the Euler transformation
 *   2F1(alpha, alpha; 1; x) = (1 - x)^(1 - 2 alpha) 2F1(1 - alpha, 1 - alpha; 1; x)
 * is summed instead; its coefficients decay like k^(-2 alpha).
 */
inline double hyp2f1_aa1(double alpha, double x) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw domain_error("hyp2f1_aa1: alpha must be a finite value > 1");
  }
  if (!(x >= 0.0 && x < 1.0)) {
    throw domain_error("hyp2f1_aa1: x must lie in [0, 1)");
  }
  if (x == 0.0) return 1.0;
  if (x <= euler_crossover) return detail::squared_pochhammer_series(alpha, x);
  return std::pow(1.0 - x, 1.0 - 2.0 * alpha) * detail::squared_pochhammer_series(1.0 - alpha, x);
}

/**
 * (1 / 2 pi) * integral over [0, 2 pi) of |m - e^{it}|^(-2 alpha) dt, for 0 <= m < 1.
 *
 * The integrand is smooth and periodic, so the trapezoid rule converges geometrically; the node
 * count is doubled until two successive estimates agree to 1e-12 relative. This is the circular
 * integral that equals 2F1(alpha, alpha; 1; m^2); it serves as the independent check of
 * hyp2f1_aa1.
 */
inline double poisson_circle_integral(double m, double alpha) {
  if (!(m >= 0.0 && m < 1.0)) throw domain_error("poisson_circle_integral: m must lie in [0, 1)");
  if (!std::isfinite(alpha)) throw domain_error("poisson_circle_integral: alpha must be finite");
  if (m == 0.0) return 1.0;

  // |m - e^{it}|^2 = 1 - 2 m cos t + m^2
  const auto f = [m, alpha](double t) {
    return std::pow(1.0 - 2.0 * m * std::cos(t) + m * m, -alpha);
  };

  constexpr std::size_t max_nodes = std::size_t{1} << 24;
  std::size_t n = 16;
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sum += f(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
  }
  double estimate = sum / static_cast<double>(n);
  while (n < max_nodes) {
    // The new nodes sit at the midpoints of the current ones.
    for (std::size_t j = 0; j < n; ++j) {
      sum += f(std::numbers::pi * (2.0 * static_cast<double>(j) + 1.0) / static_cast<double>(n));
    }
    n *= 2;
    const double refined = sum / static_cast<double>(n);
    if (std::abs(refined - estimate) <= 1e-12 * std::abs(refined)) return refined;
    estimate = refined;
  }
  throw numeric_error("poisson_circle_integral: trapezoid rule did not converge");
}

}  // namespace confnat
