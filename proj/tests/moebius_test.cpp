#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "confnat/moebius.hpp"
#include "confnat/quadrature.hpp"
#include "support/random_points.hpp"

using namespace confnat;
using confnat::testing::random_disc_point;
using confnat::testing::random_transform;

namespace {

// Angular distance on the circle.
double circle_gap(double x, double y) {
  const double d = std::fmod(std::abs(x - y), two_pi);
  return std::min(d, two_pi - d);
}

}  // namespace

TEST(DiscPoint, RejectsBoundaryAndNonFinite) {
  EXPECT_THROW(disc_point(1.0, 0.0), domain_error);
  EXPECT_THROW(disc_point(0.6, 0.8), domain_error);
  EXPECT_THROW(disc_point(1.0 - 1e-16, 0.0), domain_error);
  EXPECT_THROW(disc_point(std::nan(""), 0.0), domain_error);
  EXPECT_THROW(disc_point(0.0, INFINITY), domain_error);
  EXPECT_NO_THROW(disc_point(1.0 - 1e-12, 0.0));
}

TEST(DiscPoint, ClampedPullsInside) {
  const disc_point p = disc_point::clamped({3.0, 4.0});
  EXPECT_LT(p.modulus(), max_modulus);
  EXPECT_NEAR(std::arg(p.value()), std::atan2(4.0, 3.0), 1e-15);
}

TEST(CirclePoint, NormalizesIntoHalfOpenRange) {
  EXPECT_DOUBLE_EQ(circle_point(-std::numbers::pi / 2).phi(), 1.5 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(circle_point(two_pi).phi(), 0.0);
  EXPECT_NEAR(circle_point(7.0).phi(), 7.0 - two_pi, 1e-15);
}

TEST(Moebius, InvolutionSwapsOriginAndParameter) {
  const disc_point a(0.3, 0.4);
  const auto g = moebius_transform::involution(a);
  EXPECT_NEAR(std::abs(g(disc_point{}).value() - a.value()), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g(a).value()), 0.0, 1e-15);
}

TEST(Moebius, ThetaZeroAtOriginIsAntipodalAndIdentityIsThetaPi) {
  const moebius_transform antipodal(disc_point{}, 0.0);
  EXPECT_DOUBLE_EQ(antipodal(disc_point(0.5, 0.0)).re(), -0.5);
  const auto id = moebius_transform::identity();
  EXPECT_NEAR(std::abs(id(disc_point(0.5, 0.2)).value() - complex(0.5, 0.2)), 0.0, 1e-16);
}

TEST(Moebius, BoundaryAction) {
  EXPECT_NEAR(circle_gap(moebius_transform::identity()(circle_point(1.0)).phi(), 1.0), 0.0, 1e-15);
  EXPECT_NEAR(circle_gap(moebius_transform(disc_point{}, 0.0)(circle_point(0.0)).phi(),
                         std::numbers::pi),
              0.0, 1e-15);
  // (0.5 - 1) / (1 - 0.5) = -1
  EXPECT_NEAR(circle_gap(moebius_transform::involution(disc_point(0.5, 0.0))(circle_point(0.0)).phi(),
                         std::numbers::pi),
              0.0, 1e-15);
}

TEST(Moebius, BoundaryStaysOnCircleBeforeRenormalization) {
  rng_stream rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_transform(rng, 0.99);
    const complex w = t.map(std::polar(1.0, two_pi * rng.next_uniform()));
    EXPECT_NEAR(std::abs(w), 1.0, 1e-12);
  }
}

TEST(Moebius, InvolutionPropertyOnRandomPoints) {
  rng_stream rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = moebius_transform::involution(random_disc_point(rng, 0.95));
    for (int i = 0; i < 1000; ++i) {
      const disc_point z = random_disc_point(rng, 0.95);
      ASSERT_LT(std::abs(g(g(z)).value() - z.value()), 1e-12);
    }
  }
}

TEST(Moebius, ComposeInvolutionWithItselfIsIdentity) {
  const auto g = moebius_transform::involution(disc_point(0.3, 0.4));
  const auto id = compose(g, g);
  EXPECT_NEAR(id.a().modulus(), 0.0, 1e-15);
  EXPECT_NEAR(circle_gap(id.theta(), std::numbers::pi), 0.0, 1e-15);
}

TEST(Moebius, ComposeWithIdentity) {
  const moebius_transform t(disc_point(-0.2, 0.7), 1.3);
  const auto c = compose(moebius_transform::identity(), t);
  EXPECT_NEAR(std::abs(c.a().value() - t.a().value()), 0.0, 1e-15);
  EXPECT_NEAR(circle_gap(c.theta(), t.theta()), 0.0, 1e-15);
}

TEST(Moebius, ComposeMatchesSequentialApplication) {
  rng_stream rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t1 = random_transform(rng);
    const auto t2 = random_transform(rng);
    const auto c = compose(t1, t2);
    for (int i = 0; i < 100; ++i) {
      const disc_point z = random_disc_point(rng, 0.9);
      ASSERT_LT(std::abs(c(z).value() - t1(t2(z)).value()), 1e-12);
    }
  }
}

TEST(Moebius, Inverse) {
  const disc_point a(0.3, -0.1);
  const auto g = moebius_transform::involution(a);
  const auto gi = inverse(g);
  EXPECT_NEAR(std::abs(gi.a().value() - a.value()), 0.0, 1e-16);
  EXPECT_NEAR(circle_gap(gi.theta(), 0.0), 0.0, 1e-16);

  const auto id = inverse(moebius_transform::identity());
  EXPECT_NEAR(id.a().modulus(), 0.0, 0.0);
  EXPECT_NEAR(circle_gap(id.theta(), std::numbers::pi), 0.0, 1e-15);

  rng_stream rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_transform(rng);
    const auto round_trip = compose(t, inverse(t));
    for (int i = 0; i < 50; ++i) {
      const disc_point z = random_disc_point(rng, 0.9);
      ASSERT_LT(std::abs(round_trip(z).value() - z.value()), 1e-12);
    }
  }
}

TEST(HypDistance, OriginToHalfMatchesLineElementIntegral) {
  // Composite Simpson on dr / (1 - r^2) over [0, 0.5].
  constexpr int n = 2000;
  const double h = 0.5 / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w / (1.0 - r * r);
  }
  const double line_integral = s * h / 3.0;
  EXPECT_NEAR(line_integral, 0.5493061443340549, 1e-12);
  EXPECT_NEAR(hyp_distance(disc_point{}, disc_point(0.5, 0.0)), line_integral, 1e-12);
  EXPECT_EQ(hyp_distance(disc_point{}, disc_point{}), 0.0);
}

TEST(HypDistance, SymmetricAndInvariant) {
  rng_stream rng(29);
  for (int i = 0; i < 1000; ++i) {
    const disc_point z = random_disc_point(rng, 0.9);
    const disc_point w = random_disc_point(rng, 0.9);
    const auto g = random_transform(rng, 0.9);
    const double d = hyp_distance(z, w);
    ASSERT_NEAR(d, hyp_distance(w, z), 1e-14);
    ASSERT_NEAR(d, hyp_distance(g(z), g(w)), 1e-12 * std::max(1.0, d));
  }
}

TEST(HypDistance, FiniteNearBoundary) {
  const double d = hyp_distance(disc_point(-(1.0 - 1e-14), 0.0), disc_point(1.0 - 1e-14, 0.0));
  EXPECT_TRUE(std::isfinite(d));
}

TEST(TauDensity, Values) {
  EXPECT_DOUBLE_EQ(tau_density(disc_point{}), 1.0);
  EXPECT_NEAR(tau_density(disc_point(0.5, 0.0)), 16.0 / 9.0, 1e-15);
  double previous = 0.0;
  for (double r = 0.0; r < 0.99; r += 0.01) {
    const double t = tau_density(disc_point(r, 0.0));
    EXPECT_GT(t, previous);
    previous = t;
  }
}

TEST(ExpLog, OriginFormula) {
  const auto v = hyp_log(disc_point{}, disc_point(0.5, 0.0));
  EXPECT_NEAR(v.x, std::atanh(0.5), 1e-15);
  EXPECT_NEAR(v.y, 0.0, 1e-15);
  EXPECT_EQ(hyp_exp(disc_point(0.2, 0.3), tangent_vector{}), disc_point(0.2, 0.3));
  const auto zero = hyp_log(disc_point(0.2, 0.3), disc_point(0.2, 0.3));
  EXPECT_EQ(zero.x, 0.0);
  EXPECT_EQ(zero.y, 0.0);
}

TEST(ExpLog, RoundTripAndLengthIsDistance) {
  rng_stream rng(31);
  for (int i = 0; i < 100; ++i) {
    const disc_point base = random_disc_point(rng, 0.9);
    const disc_point z = random_disc_point(rng, 0.9);
    const auto v = hyp_log(base, z);
    EXPECT_NEAR(v.norm(), hyp_distance(base, z), 1e-12);
    EXPECT_LT(std::abs(hyp_exp(base, v).value() - z.value()), 1e-10);
  }
}

TEST(ExpLog, GeodesicMidpoint) {
  // Halfway along the geodesic from base to z is equidistant from both.
  rng_stream rng(37);
  for (int i = 0; i < 50; ++i) {
    const disc_point base = random_disc_point(rng, 0.8);
    const disc_point z = random_disc_point(rng, 0.8);
    const disc_point mid = hyp_exp(base, 0.5 * hyp_log(base, z));
    EXPECT_NEAR(hyp_distance(base, mid), hyp_distance(mid, z), 1e-12);
  }
}

TEST(Transvection, MapsPToQAndIsEquivariant) {
  rng_stream rng(41);
  for (int i = 0; i < 50; ++i) {
    const disc_point p = random_disc_point(rng, 0.8);
    const disc_point q = random_disc_point(rng, 0.8);
    const auto g = random_transform(rng, 0.8);
    const auto t = transvection(p, q);
    EXPECT_LT(std::abs(t(p).value() - q.value()), 1e-12);
    // g o T(p, q) o g^{-1} = T(g p, g q)
    const auto lhs = compose(g, compose(t, inverse(g)));
    const auto rhs = transvection(g(p), g(q));
    for (int k = 0; k < 10; ++k) {
      const disc_point z = random_disc_point(rng, 0.8);
      EXPECT_LT(std::abs(lhs(z).value() - rhs(z).value()), 1e-11);
    }
  }
}

// Invariance of tau dA: integral of h(g(z)) tau(z) dA(z) equals integral of h(w) tau(w) dA(w) for
// a smooth bump h compactly supported in |w| < 0.6.
TEST(MeasureInvariance, PolarQuadrature) {
  const auto h = [](const disc_point& w) {
    const double s = w.norm() / 0.36;
    return s < 1.0 ? std::exp(-1.0 / (1.0 - s)) * (1.0 + w.re()) : 0.0;
  };
  const double reference =
      integrate_disc([&](const disc_point& w) { return h(w) * tau_density(w); }, 128, 512);
  rng_stream rng(43);
  for (int trial = 0; trial < 3; ++trial) {
    const auto g = random_transform(rng, 0.5);
    const double moved =
        integrate_disc([&](const disc_point& z) { return h(g(z)) * tau_density(z); }, 128, 512);
    EXPECT_LT(std::abs(moved - reference) / reference, 1e-6);
  }
}
