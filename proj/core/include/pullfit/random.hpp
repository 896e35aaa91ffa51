#pragma once

#include <cstdint>
#include <random>

namespace pullfit {

/// Mixes `seed` with `stream` into a new 64-bit seed (splitmix64 finalizer
/// applied to seed + golden-ratio-weighted stream index). Used to derive
/// per-repeat and per-trial substreams from a single base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seeded random stream. The engine is std::mt19937_64, whose output sequence
/// is fixed by the standard; the distributions below are implemented here
/// rather than taken from <random> so draws are identical across standard
/// library implementations.
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);
  /// Unbiased uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);
  /// Standard normal draw (Box-Muller, two uniforms per draw, no caching).
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

private:
  std::mt19937_64 engine_;
};

} // namespace pullfit
