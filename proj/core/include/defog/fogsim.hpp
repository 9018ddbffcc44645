#pragma once

#include <vector>

#include "defog/types.hpp"

namespace defog {

/// Scattering coefficient realization for one frame: a single scalar, or a
/// width x height grid when the spatially nonuniform mode is on. Channels
/// share the field (the medium does not depend on the color channel).
struct BetaField {
  bool spatial = false;
  double scalar = 0.0;
  int width = 0;
  int height = 0;
  std::vector<double> grid;

  double at(int pixel_index) const {
    return spatial ? grid[static_cast<std::size_t>(pixel_index)] : scalar;
  }
};

/// Result of checking the two usability conditions on a sequence:
/// (i) the per-frame mean intensities fluctuate (relative std > epsilon),
/// (ii) the interval between adjacent events exceeds the coherence time.
/// ambient_autocorr is the spatially averaged lag-1 temporal autocorrelation
/// of per-pixel residuals, an estimate of how much event-to-event coherence
/// survives in the non-static component.
struct ConditionReport {
  bool condition_i_holds = false;
  bool condition_ii_holds = false;
  double mean_frame_deviation = 0.0;
  double ambient_autocorr = 0.0;
  double epsilon = 1e-3;
};

/// e^(-beta*d). Throws NegativeInput if beta < 0 or d < 0.
double transmission(double beta, double d);

/// Draws the frame's scattering coefficient field from a truncated normal
/// with mean beta0 and std beta_sigma*beta0. Deterministic in
/// (seed, frame_index); beta_sigma == 0 yields exactly beta0.
BetaField sample_beta(const FogParams& params, int frame_index, int width,
                      int height);

/// Target attenuated by the medium: target * e^(-beta*d) pixelwise.
Frame scattering_component(const Frame& target, const BetaField& beta, double d);

/// Ambient light scattered toward the detector:
/// k * ambient_mean * (1 - e^(-beta*d)) per pixel, then an independent
/// per-frame per-sample truncated-normal(1, ambient_sigma) factor. Frame-to-
/// frame independence of the factors realizes a coherence time shorter than
/// the event interval.
Frame ambient_component(int width, int height, int channels,
                        const FogParams& params, const BetaField& beta,
                        int frame_index);

/// Scattering plus ambient superposition; with shot_noise on, each sample is
/// replaced by a Poisson draw with that mean.
Frame render_frame(const Frame& target, const FogParams& params,
                   int frame_index);

/// Renders params.n_frames frames. coherence_time_s is set to 0 (ambient
/// factors decorrelate between any two events by construction); timing
/// metadata is copied from params. Output is a pure function of
/// (target, params).
FrameSequence simulate_sequence(const Frame& target, const FogParams& params);

/// Evaluates the two usability conditions; see ConditionReport.
ConditionReport check_conditions(const FrameSequence& seq, double epsilon = 1e-3);

}  // namespace defog
