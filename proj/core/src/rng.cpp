#include "defog/rng.hpp"

#include <cmath>

#include "defog/error.hpp"

namespace defog {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer: full-avalanche mix of a 64-bit word.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

SubstreamRng::SubstreamRng(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t frame, std::uint64_t element) {
  // Fold the key into the state one word at a time, mixing after each word
  // so that nearby keys land in unrelated regions of the state space.
  std::uint64_t s = mix64(seed + kGolden);
  s = mix64(s ^ (stream + kGolden));
  s = mix64(s ^ (frame + kGolden));
  s = mix64(s ^ (element + kGolden));
  state_ = s;
}

std::uint64_t SubstreamRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double SubstreamRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SubstreamRng::next_open() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double sample_standard_normal(SubstreamRng& rng) {
  const double u = rng.next_open();
  const double v = rng.next_double();
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
}

double sample_truncated_normal(SubstreamRng& rng, double mean, double sigma) {
  if (!(mean >= 0.0)) {
    throw Error(ErrorKind::NegativeInput,
                "truncated normal needs mean >= 0, got " + std::to_string(mean));
  }
  if (!(sigma >= 0.0)) {
    throw Error(ErrorKind::NegativeInput,
                "truncated normal needs sigma >= 0, got " + std::to_string(sigma));
  }
  if (sigma == 0.0) return mean;
  // Rejection from the untruncated normal. With mean >= 0 at least half the
  // mass is nonnegative, so the expected number of draws is <= 2.
  for (;;) {
    const double x = mean + sigma * sample_standard_normal(rng);
    if (x >= 0.0) return x;
  }
}

namespace {

// log(k!) via lgamma; exact enough for the PTRS acceptance test.
double log_factorial(double k) { return std::lgamma(k + 1.0); }

long long poisson_knuth(SubstreamRng& rng, double mean) {
  const double limit = std::exp(-mean);
  long long k = 0;
  double prod = rng.next_open();
  while (prod > limit) {
    ++k;
    prod *= rng.next_open();
  }
  return k;
}

// Hoermann's PTRS transformed-rejection sampler, valid for mean >= 10.
long long poisson_ptrs(SubstreamRng& rng, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.next_double() - 0.5;
    const double v = rng.next_open();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) {
      return static_cast<long long>(k);
    }
    if (k < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    const double lhs = std::log(v) + std::log(inv_alpha) -
                       std::log(a / (us * us) + b);
    const double rhs = -mean + k * loglam - log_factorial(k);
    if (lhs <= rhs) {
      return static_cast<long long>(k);
    }
  }
}

}  // namespace

long long sample_poisson(SubstreamRng& rng, double mean) {
  if (!(mean >= 0.0)) {
    throw Error(ErrorKind::NegativeInput,
                "poisson mean must be >= 0, got " + std::to_string(mean));
  }
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_knuth(rng, mean);
  return poisson_ptrs(rng, mean);
}

}  // namespace defog
