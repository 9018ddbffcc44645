#include "defog/types.hpp"

#include <cmath>
#include <sstream>

namespace defog {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::TooFewFrames: return "TooFewFrames";
    case ErrorKind::NegativePixel: return "NegativePixel";
    case ErrorKind::NonFinitePixel: return "NonFinitePixel";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::BadMagic: return "BadMagic";
    case ErrorKind::BadHeader: return "BadHeader";
    case ErrorKind::TruncatedData: return "TruncatedData";
    case ErrorKind::SampleOutOfRange: return "SampleOutOfRange";
    case ErrorKind::ChannelMismatch: return "ChannelMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Mean: return "mean";
    case Algorithm::Pnc: return "pnc";
    case Algorithm::Pnfc: return "pnfc";
  }
  return "?";
}

const char* to_string(Pairing p) {
  return p == Pairing::DisjointAdjacent ? "disjoint" : "sliding";
}

const char* to_string(Normalization n) {
  switch (n) {
    case Normalization::None: return "none";
    case Normalization::Minmax: return "minmax";
    case Normalization::SqrtMinmax: return "sqrt-minmax";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "mean") return Algorithm::Mean;
  if (s == "pnc") return Algorithm::Pnc;
  if (s == "pnfc") return Algorithm::Pnfc;
  throw Error(ErrorKind::InvalidArgument, "unknown algorithm '" + s + "'");
}

Pairing parse_pairing(const std::string& s) {
  if (s == "disjoint" || s == "disjoint-adjacent") return Pairing::DisjointAdjacent;
  if (s == "sliding") return Pairing::Sliding;
  throw Error(ErrorKind::InvalidArgument, "unknown pairing '" + s + "'");
}

Normalization parse_normalization(const std::string& s) {
  if (s == "none") return Normalization::None;
  if (s == "minmax") return Normalization::Minmax;
  if (s == "sqrt-minmax") return Normalization::SqrtMinmax;
  throw Error(ErrorKind::InvalidArgument, "unknown normalization '" + s + "'");
}

Frame Frame::zeros(int width, int height, int channels) {
  return filled(width, height, channels, 0.0);
}

Frame Frame::filled(int width, int height, int channels, double value) {
  Frame f;
  f.width = width;
  f.height = height;
  f.channels = channels;
  f.pixels.assign(static_cast<std::size_t>(width) * height * channels, value);
  return f;
}

namespace {

std::string shape_string(const Frame& f) {
  std::ostringstream oss;
  oss << f.width << "x" << f.height << "x" << f.channels;
  return oss.str();
}

void validate_frame(const Frame& f, std::size_t index) {
  if (f.width < 1 || f.height < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "frame " + std::to_string(index) + " has empty dimensions (" +
                    shape_string(f) + ")");
  }
  if (f.channels != 1 && f.channels != 3) {
    throw Error(ErrorKind::InvalidArgument,
                "frame " + std::to_string(index) + " has " +
                    std::to_string(f.channels) + " channels (want 1 or 3)");
  }
  const std::size_t expected =
      static_cast<std::size_t>(f.width) * f.height * f.channels;
  if (f.pixels.size() != expected) {
    throw Error(ErrorKind::ShapeMismatch,
                "frame " + std::to_string(index) + " pixel buffer holds " +
                    std::to_string(f.pixels.size()) + " samples, shape " +
                    shape_string(f) + " needs " + std::to_string(expected));
  }
  for (double v : f.pixels) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NonFinitePixel,
                  "frame " + std::to_string(index) + " contains a non-finite value");
    }
    if (v < 0.0) {
      throw Error(ErrorKind::NegativePixel,
                  "frame " + std::to_string(index) + " contains " + std::to_string(v));
    }
  }
}

}  // namespace

void validate_sequence(const FrameSequence& seq) {
  if (seq.frames.size() < 2) {
    throw Error(ErrorKind::TooFewFrames,
                "sequence holds " + std::to_string(seq.frames.size()) +
                    " frame(s), need at least 2");
  }
  const Frame& first = seq.frames.front();
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    validate_frame(seq.frames[i], i);
    if (!seq.frames[i].same_shape(first)) {
      throw Error(ErrorKind::ShapeMismatch,
                  "frame " + std::to_string(i) + " is " +
                      shape_string(seq.frames[i]) + ", frame 0 is " +
                      shape_string(first));
    }
  }
  if (!(seq.integration_time_s > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "integration_time_s must be > 0");
  }
  if (!(seq.interval_s > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "interval_s must be > 0");
  }
  if (!(seq.coherence_time_s >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "coherence_time_s must be >= 0");
  }
}

void validate_fog_params(const FogParams& params) {
  auto require_nonneg = [](double v, const char* name) {
    if (!(v >= 0.0)) {
      throw Error(ErrorKind::NegativeInput,
                  std::string(name) + " must be >= 0, got " + std::to_string(v));
    }
  };
  require_nonneg(params.beta0, "beta0");
  require_nonneg(params.beta_sigma, "beta_sigma");
  require_nonneg(params.d, "d");
  require_nonneg(params.ambient_mean, "ambient_mean");
  require_nonneg(params.ambient_sigma, "ambient_sigma");
  if (!(params.k_factor > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "k_factor must be > 0");
  }
  if (params.n_frames < 2) {
    throw Error(ErrorKind::TooFewFrames,
                "n_frames must be >= 2, got " + std::to_string(params.n_frames));
  }
  if (!(params.integration_time_s > 0.0) || !(params.interval_s > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "timing parameters must be > 0");
  }
}

Frame mean_frame(std::span<const Frame> frames) {
  if (frames.empty()) {
    throw Error(ErrorKind::EmptyInput, "mean_frame needs at least one frame");
  }
  const Frame& first = frames.front();
  Frame out = Frame::zeros(first.width, first.height, first.channels);
  for (const Frame& f : frames) {
    if (!f.same_shape(first)) {
      throw Error(ErrorKind::ShapeMismatch,
                  "mean_frame inputs differ in shape");
    }
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
      out.pixels[i] += f.pixels[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(frames.size());
  for (double& v : out.pixels) v *= inv;
  return out;
}

}  // namespace defog
