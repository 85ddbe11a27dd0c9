#pragma once

// Geometry of the Poincare disc: points, boundary angles, disc automorphisms, the hyperbolic
// distance and area density, and the exp/log maps used by the Karcher solver.
//
// Metric convention: ds = |dz| / (1 - |z|^2). Its area density is tau(z) = 1 / (1 - |z|^2)^2
// and the distance from the origin to r is artanh(r). References using the curvature -1
// metric 2|dz| / (1 - |z|^2) report distances twice as large.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "confnat/errors.hpp"

namespace confnat {

using complex = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Points must satisfy |z| < max_modulus; the band [1 - 1e-15, 1) is treated as boundary.
inline constexpr double max_modulus = 1.0 - 1e-15;

/// Largest value passed to artanh.
inline constexpr double max_artanh_argument = 1.0 - 0x1.0p-52;

/// A point of the open unit disc.
class disc_point {
 public:
  constexpr disc_point() = default;

  disc_point(double re, double im) : value_(re, im) { validate(value_); }

  explicit disc_point(complex z) : value_(z) { validate(value_); }

  /// Non-finite input still throws; anything at or beyond max_modulus is pulled radially
  /// inward to the largest admissible modulus. Used for results that are inside the disc
  /// mathematically but may round onto the boundary.
  static disc_point clamped(complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw domain_error("disc point has non-finite coordinates");
    }
    const double r = std::abs(z);
    // The 4 ulp margin absorbs rounding in the rescaled modulus.
    if (r >= max_modulus) z *= (max_modulus - 0x1.0p-51) / r;
    disc_point p;
    p.value_ = z;
    return p;
  }

  constexpr complex value() const noexcept { return value_; }
  constexpr double re() const noexcept { return value_.real(); }
  constexpr double im() const noexcept { return value_.imag(); }
  double modulus() const noexcept { return std::abs(value_); }
  /// |z|^2
  constexpr double norm() const noexcept { return std::norm(value_); }

  friend constexpr bool operator==(const disc_point&, const disc_point&) = default;

 private:
  static void validate(complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw domain_error("disc point has non-finite coordinates");
    }
    if (!(std::abs(z) < max_modulus)) {
      throw domain_error("disc point must satisfy |z| < 1 (got |z| = " +
                         std::to_string(std::abs(z)) + ")");
    }
  }

  complex value_{0.0, 0.0};
};

/// An angle on the unit circle, kept in [0, 2*pi).
class circle_point {
 public:
  constexpr circle_point() = default;

  explicit circle_point(double phi) : phi_(normalize(phi)) {}

  constexpr double phi() const noexcept { return phi_; }
  complex unit() const { return std::polar(1.0, phi_); }

  static double normalize(double phi) {
    if (!std::isfinite(phi)) throw domain_error("circle point angle must be finite");
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
  }

  friend constexpr bool operator==(const circle_point&, const circle_point&) = default;

 private:
  double phi_ = 0.0;
};

/// Tangent vector expressed in the orthonormal frame of the metric at its base point, i.e.
/// Euclidean components multiplied by 1 / (1 - |base|^2). Its length is the hyperbolic length.
struct tangent_vector {
  double x = 0.0;
  double y = 0.0;

  double norm() const noexcept { return std::hypot(x, y); }

  tangent_vector& operator+=(const tangent_vector& o) noexcept {
    x += o.x;
    y += o.y;
    return *this;
  }
  friend tangent_vector operator+(tangent_vector l, const tangent_vector& r) noexcept {
    return l += r;
  }
  friend tangent_vector operator-(const tangent_vector& l, const tangent_vector& r) noexcept {
    return {l.x - r.x, l.y - r.y};
  }
  friend tangent_vector operator*(double s, const tangent_vector& v) noexcept {
    return {s * v.x, s * v.y};
  }
};

/**
 * Disc automorphism z -> e^{i theta} (a - z) / (1 - conj(a) z).
 *
 * Careful: theta = 0, a = 0 is the antipodal map z -> -z. The identity is a = 0, theta = pi.
 * With theta = 0 the map is the involution g_a, which swaps 0 and a.
 */
class moebius_transform {
 public:
  /// The identity map.
  moebius_transform() : theta_(std::numbers::pi) {}

  moebius_transform(disc_point a, double theta) : a_(a), theta_(circle_point::normalize(theta)) {}

  static moebius_transform identity() { return {}; }
  static moebius_transform involution(disc_point a) { return {a, 0.0}; }

  /// Hyperbolic translation along the diameter through c, taking 0 to c: z -> (z + c) / (1 + conj(c) z).
  static moebius_transform translation(disc_point c) {
    return {disc_point::clamped(-c.value()), std::numbers::pi};
  }

  const disc_point& a() const noexcept { return a_; }
  double theta() const noexcept { return theta_; }

  /// The fractional-linear formula on any z with conj(a) z != 1.
  complex map(complex z) const {
    return std::polar(1.0, theta_) * (a_.value() - z) / (1.0 - std::conj(a_.value()) * z);
  }

  /// Complex derivative of map at z.
  complex derivative(complex z) const {
    const complex den = 1.0 - std::conj(a_.value()) * z;
    return std::polar(1.0, theta_) * (a_.norm() - 1.0) / (den * den);
  }

  disc_point operator()(const disc_point& z) const { return disc_point::clamped(map(z.value())); }

  circle_point operator()(const circle_point& p) const {
    return circle_point(std::arg(map(p.unit())));
  }

 private:
  disc_point a_;
  double theta_;
};

/// Composite t1 o t2 (t2 applied first). The composite is evaluated at the origin and its
/// derivative phase there: h(0) = e^{i theta} c and h'(0) = e^{i theta} (|c|^2 - 1).
inline moebius_transform compose(const moebius_transform& t1, const moebius_transform& t2) {
  const complex w = t2.map(0.0);
  const complex d = t1.derivative(w) * t2.derivative(0.0);
  const double theta = std::arg(-d);
  const complex c = std::polar(1.0, -theta) * t1.map(w);
  return {disc_point::clamped(c), theta};
}

/// Solving w = e^{i theta} g_a(z) for z gives the automorphism with parameter e^{i theta} a
/// and rotation -theta.
inline moebius_transform inverse(const moebius_transform& t) {
  return {disc_point::clamped(std::polar(1.0, t.theta()) * t.a().value()), -t.theta()};
}

/// Pseudo-hyperbolic distance |z - w| / |1 - conj(z) w| = |g_z(w)|.
inline double pseudo_distance(const disc_point& z, const disc_point& w) {
  return std::abs(z.value() - w.value()) / std::abs(1.0 - std::conj(z.value()) * w.value());
}

inline double hyp_distance(const disc_point& z, const disc_point& w) {
  return std::atanh(std::min(pseudo_distance(z, w), max_artanh_argument));
}

/// Hyperbolic area density with respect to Lebesgue measure.
inline double tau_density(const disc_point& z) {
  const double s = 1.0 - z.norm();
  return 1.0 / (s * s);
}

// exp/log are computed at the origin, where the frame is the Euclidean one, and carried to the
// base point by g_base. The differential of g_base at 0 is the negative real |base|^2 - 1, so in
// the orthonormal frame it acts as the sign flip.

inline tangent_vector hyp_log(const disc_point& base, const disc_point& z) {
  const complex u = moebius_transform::involution(base).map(z.value());
  const double m = std::abs(u);
  if (m == 0.0) return {};
  const complex v = -(std::atanh(std::min(m, max_artanh_argument)) / m) * u;
  return {v.real(), v.imag()};
}

inline disc_point hyp_exp(const disc_point& base, const tangent_vector& v) {
  const double n = v.norm();
  if (n == 0.0) return base;
  const complex u = -(std::tanh(n) / n) * complex(v.x, v.y);
  return disc_point::clamped(moebius_transform::involution(base).map(u));
}

/// The hyperbolic translation along the geodesic through p and q that takes p to q.
/// Conjugating by any automorphism g gives the translation from g(p) to g(q).
inline moebius_transform transvection(const disc_point& p, const disc_point& q) {
  const auto to_p = moebius_transform::translation(p);
  const auto from_p = inverse(to_p);
  const disc_point w = from_p(q);
  return compose(to_p, compose(moebius_transform::translation(w), from_p));
}

}  // namespace confnat
