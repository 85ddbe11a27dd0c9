#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "confnat/errors.hpp"
#include "confnat/moebius.hpp"
#include "confnat/rng.hpp"
#include "confnat/special_functions.hpp"

namespace confnat {

namespace radial_cdf_forms {

// P{|Z| < b}. All three forms integrate the density over |z| < b in the variable s = r^2, so the
// upper limit is b^2.

/// a = 0: 1 - (1 - b^2)^(alpha - 1)
inline double origin(double alpha, double b) {
  return -std::expm1((alpha - 1.0) * std::log1p(-b * b));
}

/// alpha = 2: (1 - |a|^2)^2 b^2 / (1 - |a|^2 b^2)^2, with a_norm = |a|^2.
inline double alpha_two(double a_norm, double b) {
  const double one_minus = 1.0 - a_norm;
  const double den = 1.0 - a_norm * b * b;
  return one_minus * one_minus * b * b / (den * den);
}

/// General case: (alpha - 1) (1 - |a|^2)^alpha * integral_0^{b^2} (1 - s)^(alpha - 2)
/// 2F1(alpha, alpha; 1; |a|^2 s) ds, by tanh-sinh quadrature.
inline double quadrature(double alpha, double a_norm, double b) {
  if (b <= 0.0) return 0.0;
  if (b >= 1.0) return 1.0;
  const auto integrand = [alpha, a_norm](double s) {
    return std::pow(1.0 - s, alpha - 2.0) * hyp2f1_aa1(alpha, a_norm * s);
  };
  const double scale = (alpha - 1.0) * std::pow(1.0 - a_norm, alpha);
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(integrand, 0.0, b * b, 1e-13, &error, &l1);
  if (!std::isfinite(value) || scale * error > 1e-10) {
    throw numeric_error("radial CDF quadrature did not reach 1e-10 (error estimate " +
                        std::to_string(scale * error) + ")");
  }
  return std::clamp(scale * value, 0.0, 1.0);
}

}  // namespace radial_cdf_forms

/**
 * Conformally natural law F(alpha, a) on the Poincare disc. Its density with respect to the
 * hyperbolic area measure tau(z) dA(z) is
 *
 *   p(z) = ((alpha - 1) / pi) (1 - |a|^2)^alpha ((1 - |z|^2) / |1 - conj(a) z|^2)^alpha
 *        = ((alpha - 1) / pi) (1 - |g_a(z)|^2)^alpha.
 *
 * The family is closed under disc automorphisms: the image of F(alpha, a) under g is
 * F(alpha, g(a)). Larger alpha concentrates the law around a.
 */
class conf_natural {
 public:
  conf_natural(double alpha, disc_point a) : alpha_(alpha), a_(a) {
    if (!std::isfinite(alpha) || !(alpha > 1.0)) {
      throw domain_error("alpha must be a finite value > 1 (got " + std::to_string(alpha) + ")");
    }
  }

  double alpha() const noexcept { return alpha_; }
  const disc_point& a() const noexcept { return a_; }

  double normalizing_constant() const noexcept { return (alpha_ - 1.0) / std::numbers::pi; }

  /// 1 - |g_a(z)|^2 = (1 - |a|^2)(1 - |z|^2) / |1 - conj(a) z|^2
  double kernel(const disc_point& z) const {
    return (1.0 - a_.norm()) * (1.0 - z.norm()) /
           std::norm(1.0 - std::conj(a_.value()) * z.value());
  }

  /// Density against tau dA.
  double pdf_hyp(const disc_point& z) const {
    return normalizing_constant() * std::pow(kernel(z), alpha_);
  }

  /// Density against Euclidean dA.
  double pdf_lebesgue(const disc_point& z) const { return pdf_hyp(z) * tau_density(z); }

  /// Log of pdf_hyp, evaluated term by term so it stays finite where pdf_hyp underflows.
  double log_pdf(const disc_point& z) const {
    return std::log(alpha_ - 1.0) - std::log(std::numbers::pi) +
           alpha_ * (std::log1p(-a_.norm()) + std::log1p(-z.norm()) -
                     2.0 * std::log(std::abs(1.0 - std::conj(a_.value()) * z.value())));
  }

  /// P{|Z| < b} for b in [0, 1].
  double radial_cdf(double b) const {
    if (!(b >= 0.0 && b <= 1.0)) {
      throw domain_error("radial_cdf: b must lie in [0, 1] (got " + std::to_string(b) + ")");
    }
    if (b == 0.0) return 0.0;
    if (b == 1.0) return 1.0;
    if (a_.norm() == 0.0) return radial_cdf_forms::origin(alpha_, b);
    if (alpha_ == 2.0) return radial_cdf_forms::alpha_two(a_.norm(), b);
    return radial_cdf_forms::quadrature(alpha_, a_.norm(), b);
  }

  /// Inverse of the a = 0 radial CDF: rho^2 = 1 - (1 - u)^(1 / (alpha - 1)).
  double origin_radius_quantile(double u) const {
    return std::sqrt(-std::expm1(std::log1p(-u) / (alpha_ - 1.0)));
  }

  /// One draw from F(alpha, 0) carried by `frame`. Any frame with frame(0) = a yields a draw from
  /// F(alpha, a) because F(alpha, 0) is rotation invariant.
  template <uniform_source Rng>
  disc_point sample_in_frame(const moebius_transform& frame, Rng& rng) const {
    const double u1 = rng.next_uniform();
    const double u2 = rng.next_uniform();
    const double psi = two_pi * u1;
    const double rho = origin_radius_quantile(u2);
    return frame(disc_point::clamped(std::polar(rho, psi)));
  }

  /// Draws an F(alpha, 0) point and returns g_a of it.
  template <uniform_source Rng>
  disc_point sample(Rng& rng) const {
    return sample_in_frame(moebius_transform::involution(a_), rng);
  }

  template <uniform_source Rng>
  std::vector<disc_point> sample(Rng& rng, std::size_t n) const {
    const auto frame = moebius_transform::involution(a_);
    std::vector<disc_point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_in_frame(frame, rng));
    return out;
  }

  conf_natural pushforward(const moebius_transform& t) const { return {alpha_, t(a_)}; }

  /// Riemannian centre of mass.
  disc_point mean() const noexcept { return a_; }

 private:
  double alpha_;
  disc_point a_;
};

/// g = g_w o g_v, which maps v to w. Pushing F(alpha, v) forward by g gives F(alpha, w).
inline moebius_transform transport(const disc_point& v, const disc_point& w) {
  return compose(moebius_transform::involution(w), moebius_transform::involution(v));
}

/// Finite mixture of conformally natural laws.
class mixture {
 public:
  mixture(std::vector<double> weights, std::vector<conf_natural> components)
      : weights_(std::move(weights)), components_(std::move(components)) {
    if (components_.empty()) throw domain_error("mixture needs at least one component");
    if (weights_.size() != components_.size()) {
      throw domain_error("mixture: weight and component counts differ");
    }
    double total = 0.0;
    for (double w : weights_) {
      if (!std::isfinite(w) || w < 0.0) throw domain_error("mixture weights must be nonnegative");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw domain_error("mixture weights must sum to 1");
  }

  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<conf_natural>& components() const noexcept { return components_; }

  double pdf_hyp(const disc_point& z) const {
    double p = 0.0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
      p += weights_[i] * components_[i].pdf_hyp(z);
    }
    return p;
  }

  /// One uniform picks the component, the component then draws as usual.
  template <uniform_source Rng>
  disc_point sample(Rng& rng) const {
    const double u = rng.next_uniform();
    double cumulative = 0.0;
    std::size_t pick = components_.size() - 1;
    for (std::size_t i = 0; i < components_.size(); ++i) {
      cumulative += weights_[i];
      if (u < cumulative) {
        pick = i;
        break;
      }
    }
    return components_[pick].sample(rng);
  }

  template <uniform_source Rng>
  std::vector<disc_point> sample(Rng& rng, std::size_t n) const {
    std::vector<disc_point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample(rng));
    return out;
  }

 private:
  std::vector<double> weights_;
  std::vector<conf_natural> components_;
};

}  // namespace confnat
