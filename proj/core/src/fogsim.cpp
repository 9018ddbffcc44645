#include "defog/fogsim.hpp"

#include <cmath>

#include "defog/rng.hpp"

namespace defog {

double transmission(double beta, double d) {
  if (!(beta >= 0.0)) {
    throw Error(ErrorKind::NegativeInput,
                "transmission needs beta >= 0, got " + std::to_string(beta));
  }
  if (!(d >= 0.0)) {
    throw Error(ErrorKind::NegativeInput,
                "transmission needs d >= 0, got " + std::to_string(d));
  }
  return std::exp(-beta * d);
}

BetaField sample_beta(const FogParams& params, int frame_index, int width,
                      int height) {
  validate_fog_params(params);
  BetaField field;
  field.spatial = params.spatial_beta;
  field.width = width;
  field.height = height;
  const double sigma = params.beta_sigma * params.beta0;
  if (!params.spatial_beta) {
    SubstreamRng rng(params.seed, stream::kBeta,
                     static_cast<std::uint64_t>(frame_index), 0);
    field.scalar = sample_truncated_normal(rng, params.beta0, sigma);
    return field;
  }
  const std::size_t n = static_cast<std::size_t>(width) * height;
  field.grid.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    SubstreamRng rng(params.seed, stream::kBeta,
                     static_cast<std::uint64_t>(frame_index), i);
    field.grid[i] = sample_truncated_normal(rng, params.beta0, sigma);
  }
  return field;
}

Frame scattering_component(const Frame& target, const BetaField& beta,
                           double d) {
  Frame out = target;
  const int channels = target.channels;
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    const int pixel = static_cast<int>(i / channels);
    out.pixels[i] = target.pixels[i] * transmission(beta.at(pixel), d);
  }
  return out;
}

Frame ambient_component(int width, int height, int channels,
                        const FogParams& params, const BetaField& beta,
                        int frame_index) {
  Frame out = Frame::zeros(width, height, channels);
  const double base = params.k_factor * params.ambient_mean;
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    const int pixel = static_cast<int>(i / channels);
    const double mean = base * (1.0 - transmission(beta.at(pixel), params.d));
    if (params.ambient_sigma == 0.0) {
      out.pixels[i] = mean;
      continue;
    }
    SubstreamRng rng(params.seed, stream::kAmbient,
                     static_cast<std::uint64_t>(frame_index), i);
    out.pixels[i] = mean * sample_truncated_normal(rng, 1.0, params.ambient_sigma);
  }
  return out;
}

Frame render_frame(const Frame& target, const FogParams& params,
                   int frame_index) {
  const BetaField beta = sample_beta(params, frame_index, target.width,
                                     target.height);
  Frame out = scattering_component(target, beta, params.d);
  const Frame ambient = ambient_component(target.width, target.height,
                                          target.channels, params, beta,
                                          frame_index);
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    out.pixels[i] += ambient.pixels[i];
  }
  if (params.shot_noise) {
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
      SubstreamRng rng(params.seed, stream::kShot,
                       static_cast<std::uint64_t>(frame_index), i);
      out.pixels[i] =
          static_cast<double>(sample_poisson(rng, out.pixels[i]));
    }
  }
  return out;
}

FrameSequence simulate_sequence(const Frame& target, const FogParams& params) {
  validate_fog_params(params);
  if (target.width < 1 || target.height < 1 ||
      (target.channels != 1 && target.channels != 3)) {
    throw Error(ErrorKind::InvalidArgument, "target frame has invalid shape");
  }
  for (double v : target.pixels) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NonFinitePixel, "target contains a non-finite value");
    }
    if (v < 0.0) {
      throw Error(ErrorKind::NegativePixel, "target contains a negative value");
    }
  }
  FrameSequence seq;
  seq.integration_time_s = params.integration_time_s;
  seq.interval_s = params.interval_s;
  seq.coherence_time_s = 0.0;
  seq.frames.reserve(static_cast<std::size_t>(params.n_frames));
  for (int t = 0; t < params.n_frames; ++t) {
    seq.frames.push_back(render_frame(target, params, t));
  }
  return seq;
}

ConditionReport check_conditions(const FrameSequence& seq, double epsilon) {
  validate_sequence(seq);
  if (!(epsilon > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must be > 0");
  }
  ConditionReport report;
  report.epsilon = epsilon;

  // Condition (i): relative std of the per-frame mean intensities.
  const std::size_t n = seq.frames.size();
  std::vector<double> frame_means(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double sum = 0.0;
    for (double v : seq.frames[t].pixels) sum += v;
    frame_means[t] = sum / static_cast<double>(seq.frames[t].pixels.size());
  }
  double mu = 0.0;
  for (double m : frame_means) mu += m;
  mu /= static_cast<double>(n);
  double var = 0.0;
  for (double m : frame_means) var += (m - mu) * (m - mu);
  var /= static_cast<double>(n);
  report.mean_frame_deviation = mu > 0.0 ? std::sqrt(var) / mu : 0.0;
  report.condition_i_holds = report.mean_frame_deviation > epsilon;

  // Condition (ii): event spacing exceeds the coherence time.
  report.condition_ii_holds = seq.interval_s > seq.coherence_time_s;

  // Lag-1 autocorrelation of per-pixel residuals (value minus that pixel's
  // temporal mean), averaged across pixels. Near zero when adjacent events
  // are independent, near one when the medium is effectively frozen.
  const Frame temporal_mean = mean_frame(seq.frames);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t t = 0; t + 1 < n; ++t) {
    const Frame& a = seq.frames[t];
    const Frame& b = seq.frames[t + 1];
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
      const double ra = a.pixels[i] - temporal_mean.pixels[i];
      const double rb = b.pixels[i] - temporal_mean.pixels[i];
      num += ra * rb;
      den += ra * ra;
    }
  }
  report.ambient_autocorr = den > 0.0 ? num / den : 0.0;
  return report;
}

}  // namespace defog
