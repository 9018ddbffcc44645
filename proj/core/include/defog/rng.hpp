#pragma once

#include <cstdint>

namespace defog {

/// Counter-derived random substreams.
///
/// Every stochastic quantity in the simulator draws from a SubstreamRng
/// keyed by (seed, stream, frame, element). The starting state is a hash of
/// the full key, so any (frame, pixel) cell can be generated independently
/// of evaluation order or thread count, and two runs with the same seed are
/// bit-identical. Within one key the generator is sequential (splitmix64).
class SubstreamRng {
 public:
  SubstreamRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t frame,
               std::uint64_t element);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_double();

  /// Uniform double in (0, 1]; safe as a log() argument.
  double next_open();

 private:
  std::uint64_t state_;
};

/// Stream selectors for the simulator's independent noise sources.
namespace stream {
inline constexpr std::uint64_t kBeta = 1;
inline constexpr std::uint64_t kAmbient = 2;
inline constexpr std::uint64_t kShot = 3;
}  // namespace stream

/// Standard normal via Box-Muller (the cosine branch only, one value per
/// two uniforms). Spelled out rather than using std::normal_distribution so
/// the produced bit stream is fixed by this code, not the standard library.
double sample_standard_normal(SubstreamRng& rng);

/// Normal(mean, sigma) truncated to [0, inf) by rejection; sigma == 0
/// returns mean exactly. Requires mean >= 0 so acceptance is at least 1/2.
double sample_truncated_normal(SubstreamRng& rng, double mean, double sigma);

/// Poisson(mean). Inversion by multiplication for small means, the PTRS
/// transformed-rejection sampler for mean >= 10.
long long sample_poisson(SubstreamRng& rng, double mean);

}  // namespace defog
