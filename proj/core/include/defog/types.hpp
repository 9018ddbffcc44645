#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "defog/error.hpp"

namespace defog {

/// One measurement event: a width x height x channels grid of nonnegative
/// photon counts, stored row-major with interleaved channels. Pixel values
/// are doubles; quantization to integers happens only at image export.
struct Frame {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<double> pixels;

  static Frame zeros(int width, int height, int channels = 1);
  static Frame filled(int width, int height, int channels, double value);

  std::size_t sample_count() const { return pixels.size(); }

  double& at(int x, int y, int channel = 0) {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + channel];
  }
  double at(int x, int y, int channel = 0) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * channels + channel];
  }

  bool same_shape(const Frame& other) const {
    return width == other.width && height == other.height &&
           channels == other.channels;
  }
};

/// Ordered measurement events with uniform shape plus timing metadata.
/// integration_time_s is the exposure of one event, interval_s the spacing
/// between adjacent events, coherence_time_s the light-field coherence time
/// (zero for simulated sequences, user-declared for real data).
struct FrameSequence {
  std::vector<Frame> frames;
  double integration_time_s = 1.0 / 30.0;
  double interval_s = 1.0;
  double coherence_time_s = 0.0;
};

/// Physical and stochastic parameters of the time-variant medium.
///
/// beta0 is the mean scattering coefficient (1/m), beta_sigma the relative
/// std of its per-frame (or per-pixel) draws, d the optical path (m).
/// ambient_mean is the ambient source intensity in the same photon-count
/// units as the target; ambient_sigma the relative per-pixel per-frame
/// fluctuation of the scattered ambient light. Exposure time has no explicit
/// term in the photon model: scale the target and ambient_mean to the photon
/// budget of one integration window before simulating.
struct FogParams {
  double beta0 = 2.5;
  double beta_sigma = 0.3;
  double d = 0.6;
  double ambient_mean = 8000.0;
  double ambient_sigma = 0.3;
  double k_factor = 1.0;
  bool shot_noise = true;
  std::uint64_t seed = 1;
  int n_frames = 20;
  bool spatial_beta = false;
  double integration_time_s = 1.0 / 30.0;
  double interval_s = 1.0;
};

enum class Algorithm { Mean, Pnc, Pnfc };
enum class Pairing { DisjointAdjacent, Sliding };
enum class Normalization { None, Minmax, SqrtMinmax };

const char* to_string(Algorithm a);
const char* to_string(Pairing p);
const char* to_string(Normalization n);
Algorithm parse_algorithm(const std::string& s);
Pairing parse_pairing(const std::string& s);
Normalization parse_normalization(const std::string& s);

/// Reconstruction settings. Defaults follow the photon-number fluctuation
/// correlation path with disjoint adjacent pairing and sqrt-minmax display
/// normalization (correlation outputs carry squared-intensity units).
struct ReconConfig {
  Algorithm algorithm = Algorithm::Pnfc;
  Pairing pairing = Pairing::DisjointAdjacent;
  Normalization normalization = Normalization::SqrtMinmax;
};

/// Throws Error if any FrameSequence invariant is violated:
/// TooFewFrames (< 2 frames), ShapeMismatch (nonuniform dims or pixel
/// buffer size), NegativePixel / NonFinitePixel (bad values),
/// InvalidArgument (nonpositive timing metadata, bad channel count).
void validate_sequence(const FrameSequence& seq);

/// Throws Error (NegativeInput / InvalidArgument) on out-of-range parameters.
void validate_fog_params(const FogParams& params);

/// Pixelwise arithmetic mean of a nonempty list of same-shape frames.
Frame mean_frame(std::span<const Frame> frames);

}  // namespace defog
