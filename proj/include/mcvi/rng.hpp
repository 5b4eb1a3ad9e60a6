#pragma once

#include <cstdint>

namespace mcvi {

/// SplitMix64 (Steele, Lea & Flood 2014). All randomness in the project comes
/// from this generator; std:: distributions are never used.
///
///   state  += 0x9E3779B97F4A7C15
///   z       = state
///   z       = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z       = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output  = z ^ (z >> 31)
///
/// uniform() maps the top 53 bits of an output to [0, 1).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;

  /// [0, 1) with 53 bits of resolution.
  double uniform() noexcept;
  /// [lo, hi).
  double uniform(double lo, double hi) noexcept;
  /// Integer in [0, bound). Uses rejection so the result is unbiased.
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// Standard normal via Box-Muller; consumes exactly two uniforms per call.
  double normal() noexcept;

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// The SplitMix64 output finalizer applied to a single word.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Seed of the independent stream `index` under `seed`:
///   mix64(mix64(seed) ^ mix64(index + 0xD1B54A32D192ED03)).
/// Simulation i always gets the same stream, whatever thread runs it.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

inline SplitMix64 make_stream(std::uint64_t seed, std::uint64_t index) noexcept {
  return SplitMix64(stream_seed(seed, index));
}

/// Gamma(shape, 1) by the Marsaglia-Tsang squeeze method; shape < 1 uses the
/// identity Gamma(shape) = Gamma(shape + 1) * U^(1/shape).
double sample_gamma(double shape, SplitMix64& rng);

}  // namespace mcvi
