#pragma once

#include <cmath>
#include <complex>

#include "confnat/moebius.hpp"
#include "confnat/rng.hpp"

namespace confnat::testing {

/// Uniform point of the disc of radius `r_max`.
inline disc_point random_disc_point(rng_stream& rng, double r_max = 0.95) {
  const double r = r_max * std::sqrt(rng.next_uniform());
  return disc_point(std::polar(r, two_pi * rng.next_uniform()));
}

inline moebius_transform random_transform(rng_stream& rng, double r_max = 0.9) {
  return {random_disc_point(rng, r_max), two_pi * rng.next_uniform()};
}

}  // namespace confnat::testing
