#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "confnat/moebius.hpp"
#include "confnat/rng.hpp"

namespace confnat {

/// Wrapped Cauchy law on the circle with location parameter a = r e^{i Phi} in the disc.
/// a = 0 is the uniform law; the circular mean is a.
class wrapped_cauchy {
 public:
  wrapped_cauchy() = default;
  explicit wrapped_cauchy(disc_point a) : a_(a) {}

  const disc_point& a() const noexcept { return a_; }

  /// Density with respect to d(phi):
  ///   (1 / 2 pi) (1 - r^2) / (1 - 2 r cos(phi - Phi) + r^2)
  /// The denominator is evaluated as (1 - r)^2 + 4 r sin^2((phi - Phi) / 2).
  double pdf(const circle_point& p) const {
    const double r = a_.modulus();
    const double half = 0.5 * (p.phi() - std::arg(a_.value()));
    const double s = std::sin(half);
    return (1.0 - r) * (1.0 + r) / ((1.0 - r) * (1.0 - r) + 4.0 * r * s * s) /
           (2.0 * std::numbers::pi);
  }

  /// Same density written in the variable e^{i phi}: (1 / 2 pi) (1 - |a|^2) / |e^{i phi} - a|^2.
  double pdf_complex_form(const circle_point& p) const {
    return (1.0 - a_.norm()) / std::norm(p.unit() - a_.value()) / (2.0 * std::numbers::pi);
  }

  disc_point mean() const noexcept { return a_; }

  /// Image of a uniform angle under g_a. No rejection step.
  template <uniform_source Rng>
  circle_point sample(Rng& rng) const {
    const circle_point uniform(two_pi * rng.next_uniform());
    return moebius_transform::involution(a_)(uniform);
  }

  template <uniform_source Rng>
  std::vector<circle_point> sample(Rng& rng, std::size_t n) const {
    std::vector<circle_point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample(rng));
    return out;
  }

  /// Law of t(Phi) for Phi ~ wC(a). Since t o g_a and g_{t(a)} differ by a rotation of the
  /// uniform law, this is wC(t(a)).
  wrapped_cauchy pushforward(const moebius_transform& t) const { return wrapped_cauchy(t(a_)); }

 private:
  disc_point a_;
};

}  // namespace confnat
