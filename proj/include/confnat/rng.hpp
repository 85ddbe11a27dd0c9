#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "confnat/errors.hpp"

namespace confnat {

/// Any source of doubles in [0, 1). All samplers in this library draw through this interface,
/// so a sample set is a pure function of the distribution parameters and the stream state.
template <class T>
concept uniform_source = requires(T& source) {
  { source.next_uniform() } -> std::convertible_to<double>;
};

namespace detail {

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/**
 * Deterministic uniform stream: xoshiro256** (256-bit state) seeded by expanding the 64-bit seed
 * through SplitMix64.
 *
 * The output sequence is fixed by the algorithm, so a given seed replays bit-identically on
 * every platform. A stream has a single owner; parallel work takes independent children from
 * split().
 */
class rng_stream {
 public:
  /// Seed used by the CLI when --seed is not given.
  static constexpr std::uint64_t default_seed = 20211018ULL;

  explicit rng_stream(std::uint64_t seed = default_seed) noexcept : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = detail::splitmix64(sm);
  }

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = detail::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl(state_[3], 45);
    return result;
  }

  /// Top 53 bits scaled by 2^-53, so the result is in [0, 1) and never 1.0.
  double next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /**
   * Children are functions of (seed, child index) only: they do not depend on how far this
   * stream has advanced, and calling split() does not advance it. Child i is seeded by hashing
   * the parent seed with i, which gives sequences that are distinct from one another and from
   * the parent; they are treated as statistically independent.
   */
  std::vector<rng_stream> split(std::size_t k) const {
    if (k < 1) throw domain_error("split: k must be at least 1");
    std::vector<rng_stream> children;
    children.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::uint64_t mix = seed_ ^ 0xD1B54A32D192ED03ULL;
      const std::uint64_t a = detail::splitmix64(mix);
      mix = a + static_cast<std::uint64_t>(i) * 0xA0761D6478BD642FULL;
      children.emplace_back(detail::splitmix64(mix));
    }
    return children;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_[4]{};
};

static_assert(uniform_source<rng_stream>);

}  // namespace confnat
