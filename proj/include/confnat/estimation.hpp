#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "confnat/conf_natural.hpp"
#include "confnat/errors.hpp"
#include "confnat/moebius.hpp"
#include "confnat/rng.hpp"

namespace confnat {

namespace detail {

inline constexpr double eps = std::numeric_limits<double>::epsilon();

// Steps whose predicted decrease is below this fraction of the objective cannot be judged by
// comparing objective values, so they are taken without the comparison.
inline constexpr double resolution = 8.0 * eps;

inline std::vector<double> checked_weights(std::size_t n, std::span<const double> weights) {
  if (weights.empty()) return std::vector<double>(n, 1.0 / static_cast<double>(n));
  if (weights.size() != n) throw domain_error("karcher_mean: weight count differs from point count");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw domain_error("karcher_mean: weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw domain_error("karcher_mean: weights must sum to 1");
  return {weights.begin(), weights.end()};
}

inline disc_point euclidean_start(std::span<const disc_point> points, std::span<const double> w) {
  complex m = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) m += w[i] * points[i].value();
  const double r = std::abs(m);
  if (r > 0.999) m *= 0.999 / r;
  return disc_point(m);
}

}  // namespace detail

struct karcher_config {
  double tol = 1e-9;
  std::size_t max_iter = 1000;
  double step = 1.0;

  void validate() const {
    if (!(tol > 0.0)) throw domain_error("karcher_config: tol must be > 0");
    if (max_iter < 1) throw domain_error("karcher_config: max_iter must be >= 1");
    if (!(step > 0.0 && step <= 1.0)) throw domain_error("karcher_config: step must lie in (0, 1]");
  }
};

struct karcher_result {
  disc_point point;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  /// Weighted sum of squared distances at the start point and after every accepted step.
  std::vector<double> objective;
};

/// sum_i w_i d(m, p_i)^2
inline double karcher_objective(const disc_point& m, std::span<const disc_point> points,
                                std::span<const double> weights) {
  double f = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = hyp_distance(m, points[i]);
    f += weights[i] * d * d;
  }
  return f;
}

/**
 * Riemannian centre of mass by gradient descent: m <- exp_m(step * sum_i w_i log_m(p_i)),
 * starting at the Euclidean mean (pulled inside modulus 0.999). A step that increases the
 * objective is halved and retried, so accepted iterates never increase it. Stops once
 * |sum_i w_i log_m(p_i)| < tol.
 *
 * Empty weights mean uniform weights. Throws non_convergence_error with the last iterate when
 * max_iter steps do not reach tol.
 */
inline karcher_result karcher_solve(std::span<const disc_point> points,
                                    std::span<const double> weights = {},
                                    const karcher_config& cfg = {}) {
  cfg.validate();
  if (points.empty()) throw domain_error("karcher_mean: no points");
  const std::vector<double> w = detail::checked_weights(points.size(), weights);

  const auto gradient = [&](const disc_point& m) {
    tangent_vector g;
    for (std::size_t i = 0; i < points.size(); ++i) g += w[i] * hyp_log(m, points[i]);
    return g;
  };

  karcher_result result;
  disc_point m = detail::euclidean_start(points, w);
  double f = karcher_objective(m, points, w);
  result.objective.push_back(f);

  for (std::size_t iter = 0; iter < cfg.max_iter; ++iter) {
    const tangent_vector g = gradient(m);
    const double gn = g.norm();
    result.gradient_norm = gn;
    if (gn < cfg.tol) {
      result.point = m;
      result.iterations = iter;
      return result;
    }

    double step = cfg.step;
    disc_point candidate = hyp_exp(m, step * g);
    double f_candidate = karcher_objective(candidate, points, w);
    while (f_candidate > f && step * gn * gn > detail::resolution * f) {
      step *= 0.5;
      candidate = hyp_exp(m, step * g);
      f_candidate = karcher_objective(candidate, points, w);
    }
    m = candidate;
    f = f_candidate;
    result.objective.push_back(f);
  }

  std::ostringstream msg;
  msg << "karcher_mean: no convergence after " << cfg.max_iter << " iterations (gradient norm "
      << result.gradient_norm << ")";
  throw non_convergence_error(msg.str(), m.value());
}

inline disc_point karcher_mean(std::span<const disc_point> points,
                               std::span<const double> weights = {},
                               const karcher_config& cfg = {}) {
  return karcher_solve(points, weights, cfg).point;
}

// ---------------------------------------------------------------------------------------------
// Maximum likelihood
// ---------------------------------------------------------------------------------------------

struct fit_result {
  double alpha_hat = 0.0;
  disc_point a_hat;
  double log_likelihood = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// sum_i -log(1 - |g_a(z_i)|^2) = sum_i 2 log cosh d(a, z_i). The log-likelihood is
/// n log((alpha - 1) / pi) - alpha * this.
inline double location_spread(std::span<const disc_point> samples, const disc_point& a) {
  double s = 0.0;
  for (const auto& z : samples) {
    s -= std::log1p(-a.norm()) + std::log1p(-z.norm()) -
         2.0 * std::log(std::abs(1.0 - std::conj(a.value()) * z.value()));
  }
  return s;
}

inline double log_likelihood(std::span<const disc_point> samples, double alpha,
                             const disc_point& a) {
  const conf_natural d(alpha, a);
  double ll = 0.0;
  for (const auto& z : samples) ll += d.log_pdf(z);
  return ll;
}

/**
 * Riemannian gradient of the log-likelihood in a, in the orthonormal frame at a.
 *
 * Each sample contributes alpha * 2 tanh(d) / d * log_a(z) with d = d(a, z). Since
 * log_a(z) = -d g_a(z) / |g_a(z)| and tanh(d) = |g_a(z)|, the sum is -2 alpha sum_i g_a(z_i).
 */
inline tangent_vector log_likelihood_gradient(std::span<const disc_point> samples, double alpha,
                                              const disc_point& a) {
  const auto g = moebius_transform::involution(a);
  complex sum = 0.0;
  for (const auto& z : samples) sum += g.map(z.value());
  sum *= -2.0 * alpha;
  return {sum.real(), sum.imag()};
}

/// Stationary alpha for fixed a: 1 + n / spread(a), clamped to at least 1 + 1e-9.
inline double alpha_for_location(std::span<const disc_point> samples, const disc_point& a) {
  const double s = location_spread(samples, a);
  const double alpha = 1.0 + static_cast<double>(samples.size()) / s;
  if (!(s > 0.0) || !std::isfinite(alpha)) {
    throw degenerate_input_error("fit_mle: samples coincide, alpha estimate diverges");
  }
  return std::max(alpha, 1.0 + 1e-9);
}

namespace detail {

// Gradient descent on spread(a) / n with backtracking, from a. The a-update does not depend on
// alpha: the likelihood is alpha times -spread plus a term free of a.
inline disc_point descend_location(std::span<const disc_point> samples, disc_point a,
                                   std::size_t max_steps) {
  const double n = static_cast<double>(samples.size());
  double f = location_spread(samples, a) / n;
  for (std::size_t k = 0; k < max_steps; ++k) {
    // Frame gradient of spread / n is the likelihood gradient at alpha = 1 with the sign flipped.
    const tangent_vector ascent = (1.0 / n) * log_likelihood_gradient(samples, 1.0, a);
    const double gn = ascent.norm();
    if (gn < 1e-13) break;
    double step = 0.5;
    disc_point candidate = hyp_exp(a, step * ascent);
    double f_candidate = location_spread(samples, candidate) / n;
    while (f_candidate > f && step * gn * gn > resolution * f) {
      step *= 0.5;
      candidate = hyp_exp(a, step * ascent);
      f_candidate = location_spread(samples, candidate) / n;
    }
    a = candidate;
    f = f_candidate;
  }
  return a;
}

}  // namespace detail

/**
 * Maximum-likelihood fit of F(alpha, a) by alternating maximisation: Riemannian gradient steps
 * in a, then the closed-form alpha for that a. Stops when an outer round improves the
 * log-likelihood by less than 1e-9, or after 200 rounds (converged = false). With fixed_alpha
 * only the a-steps run.
 */
inline fit_result fit_mle(std::span<const disc_point> samples, std::optional<double> fixed_alpha = {}) {
  if (samples.size() < 2) throw domain_error("fit_mle: need at least 2 samples");
  if (fixed_alpha && (!std::isfinite(*fixed_alpha) || !(*fixed_alpha > 1.0))) {
    throw domain_error("fit_mle: fixed alpha must be a finite value > 1");
  }
  const bool all_equal = std::all_of(samples.begin(), samples.end(), [&](const disc_point& z) {
    return z == samples.front();
  });
  if (all_equal) throw degenerate_input_error("fit_mle: all samples are identical");

  const std::vector<double> uniform(samples.size(), 1.0 / static_cast<double>(samples.size()));
  fit_result fit;
  fit.a_hat = detail::euclidean_start(samples, uniform);
  fit.alpha_hat = fixed_alpha.value_or(2.0);
  double previous = -std::numeric_limits<double>::infinity();

  constexpr std::size_t max_rounds = 200;
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    fit.a_hat = detail::descend_location(samples, fit.a_hat, 50);
    if (!fixed_alpha) fit.alpha_hat = alpha_for_location(samples, fit.a_hat);
    fit.log_likelihood = log_likelihood(samples, fit.alpha_hat, fit.a_hat);
    fit.iterations = round;
    if (fit.log_likelihood - previous < 1e-9) {
      fit.converged = std::isfinite(fit.log_likelihood);
      return fit;
    }
    previous = fit.log_likelihood;
  }
  fit.converged = false;
  return fit;
}

// ---------------------------------------------------------------------------------------------
// Cross-entropy optimisation
// ---------------------------------------------------------------------------------------------

inline constexpr double cem_alpha_cap = 1e6;

struct cem_config {
  std::size_t population = 200;
  double elite_frac = 0.2;
  std::size_t iterations = 40;
  double alpha0 = 2.0;
  /// alpha_{t+1} = min(alpha_t * alpha_growth, cem_alpha_cap)
  double alpha_growth = 1.15;
  /// Gradient tolerance of the elite Karcher mean.
  double karcher_tol = 1e-12;

  std::size_t elite_count() const {
    return static_cast<std::size_t>(std::ceil(elite_frac * static_cast<double>(population)));
  }

  void validate() const {
    if (population < 2) throw domain_error("cem_config: population must be >= 2");
    if (!(elite_frac > 0.0 && elite_frac <= 1.0)) {
      throw domain_error("cem_config: elite_frac must lie in (0, 1]");
    }
    if (elite_count() < 1) throw domain_error("cem_config: elite count must be >= 1");
    if (!std::isfinite(alpha0) || !(alpha0 > 1.0)) throw domain_error("cem_config: alpha0 must be > 1");
    if (!std::isfinite(alpha_growth) || !(alpha_growth >= 1.0)) {
      throw domain_error("cem_config: alpha_growth must be >= 1");
    }
    if (!(karcher_tol > 0.0)) throw domain_error("cem_config: karcher_tol must be > 0");
  }
};

struct cem_trace_row {
  std::size_t iteration = 0;
  /// Search location and concentration after this iteration's update.
  disc_point a;
  double alpha = 0.0;
  /// Best objective value seen up to and including this iteration.
  double best_value = 0.0;
};

struct cem_result {
  disc_point best_point;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<cem_trace_row> trace;
};

/**
 * Minimises `objective` over the disc with F(alpha, a) as search law.
 *
 * Each iteration draws the population, keeps the ceil(elite_frac * population) lowest values,
 * moves a to their Karcher mean and multiplies alpha by alpha_growth. The search law is carried
 * as a frame (an automorphism h with h(0) = a, drawing h(z) for z ~ F(alpha, 0)) that is moved by
 * the hyperbolic translation from the old a to the new one. Starting from g o h and minimising
 * f o g^{-1} with the same stream therefore gives the g-image of the original trace.
 */
template <class Objective, uniform_source Rng>
cem_result cem_optimize(Objective&& objective, const cem_config& cfg, Rng& rng,
                        moebius_transform frame) {
  cfg.validate();
  const std::size_t elites = cfg.elite_count();
  const karcher_config kcfg{cfg.karcher_tol, 1000, 1.0};

  cem_result result;
  disc_point a = frame(disc_point{});
  double alpha = cfg.alpha0;
  std::vector<disc_point> population(cfg.population);
  std::vector<double> values(cfg.population);
  std::vector<std::size_t> order(cfg.population);
  std::vector<disc_point> elite_points(elites);

  for (std::size_t t = 1; t <= cfg.iterations; ++t) {
    const conf_natural search(alpha, a);
    for (auto& z : population) z = search.sample_in_frame(frame, rng);
    for (std::size_t i = 0; i < population.size(); ++i) {
      values[i] = static_cast<double>(objective(population[i]));
      if (std::isnan(values[i])) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "objective returned NaN at (" << population[i].re() << ", " << population[i].im()
            << ")";
        throw evaluation_error(msg.str(), population[i].value());
      }
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
    if (values[order.front()] < result.best_value) {
      result.best_value = values[order.front()];
      result.best_point = population[order.front()];
    }
    for (std::size_t k = 0; k < elites; ++k) elite_points[k] = population[order[k]];

    const disc_point next = karcher_mean(elite_points, {}, kcfg);
    frame = compose(transvection(a, next), frame);
    a = next;
    alpha = std::min(alpha * cfg.alpha_growth, cem_alpha_cap);
    result.trace.push_back({t, a, alpha, result.best_value});
  }
  return result;
}

/// Starts from the translation taking 0 to `start`.
template <class Objective, uniform_source Rng>
cem_result cem_optimize(Objective&& objective, const cem_config& cfg, Rng& rng,
                        const disc_point& start = {}) {
  return cem_optimize(std::forward<Objective>(objective), cfg, rng,
                      moebius_transform::translation(start));
}

}  // namespace confnat
