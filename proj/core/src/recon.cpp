#include "defog/recon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace defog {

PairSet make_pairs(int n_frames, Pairing strategy) {
  if (n_frames < 2) {
    throw Error(ErrorKind::TooFewFrames,
                "pairing needs at least 2 frames, got " +
                    std::to_string(n_frames));
  }
  PairSet set;
  set.strategy = strategy;
  if (strategy == Pairing::DisjointAdjacent) {
    set.pairs.reserve(static_cast<std::size_t>(n_frames / 2));
    for (int i = 0; i + 1 < n_frames; i += 2) {
      set.pairs.emplace_back(i, i + 1);
    }
  } else {
    set.pairs.reserve(static_cast<std::size_t>(n_frames - 1));
    for (int i = 0; i + 1 < n_frames; ++i) {
      set.pairs.emplace_back(i, i + 1);
    }
  }
  return set;
}

namespace {

void validate_pairs(const FrameSequence& seq, const PairSet& pairs) {
  if (pairs.pairs.empty()) {
    throw Error(ErrorKind::EmptyInput, "pair set is empty");
  }
  const int n = static_cast<int>(seq.frames.size());
  for (const auto& [a, b] : pairs.pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw Error(ErrorKind::RangeError,
                  "pair (" + std::to_string(a) + ", " + std::to_string(b) +
                      ") is outside the sequence of " + std::to_string(n) +
                      " frames");
    }
  }
}

}  // namespace

std::pair<Frame, Frame> partition_means(const FrameSequence& seq,
                                        const PairSet& pairs) {
  validate_sequence(seq);
  validate_pairs(seq, pairs);
  const Frame& first = seq.frames.front();
  Frame mean1 = Frame::zeros(first.width, first.height, first.channels);
  Frame mean2 = Frame::zeros(first.width, first.height, first.channels);
  for (const auto& [a, b] : pairs.pairs) {
    const Frame& fa = seq.frames[static_cast<std::size_t>(a)];
    const Frame& fb = seq.frames[static_cast<std::size_t>(b)];
    for (std::size_t i = 0; i < mean1.pixels.size(); ++i) {
      mean1.pixels[i] += fa.pixels[i];
      mean2.pixels[i] += fb.pixels[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(pairs.pairs.size());
  for (std::size_t i = 0; i < mean1.pixels.size(); ++i) {
    mean1.pixels[i] *= inv;
    mean2.pixels[i] *= inv;
  }
  return {std::move(mean1), std::move(mean2)};
}

ReconResult pnc_reconstruct(const FrameSequence& seq, const PairSet& pairs,
                            Normalization normalization) {
  validate_sequence(seq);
  validate_pairs(seq, pairs);
  const Frame& first = seq.frames.front();
  Frame raw = Frame::zeros(first.width, first.height, first.channels);
  for (const auto& [a, b] : pairs.pairs) {
    const Frame& fa = seq.frames[static_cast<std::size_t>(a)];
    const Frame& fb = seq.frames[static_cast<std::size_t>(b)];
    for (std::size_t i = 0; i < raw.pixels.size(); ++i) {
      raw.pixels[i] += fa.pixels[i] * fb.pixels[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(pairs.pairs.size());
  for (double& v : raw.pixels) v *= inv;

  ReconResult result;
  result.n_pairs = static_cast<int>(pairs.pairs.size());
  result.algorithm = Algorithm::Pnc;
  result.image = normalize_display(raw, normalization);
  result.raw = std::move(raw);
  return result;
}

ReconResult pnfc_reconstruct(const FrameSequence& seq, const PairSet& pairs,
                             Normalization normalization) {
  validate_sequence(seq);
  validate_pairs(seq, pairs);
  const auto [mean1, mean2] = partition_means(seq, pairs);
  const Frame& first = seq.frames.front();
  Frame raw = Frame::zeros(first.width, first.height, first.channels);
  for (const auto& [a, b] : pairs.pairs) {
    const Frame& fa = seq.frames[static_cast<std::size_t>(a)];
    const Frame& fb = seq.frames[static_cast<std::size_t>(b)];
    for (std::size_t i = 0; i < raw.pixels.size(); ++i) {
      const FluctuationSplit d1 =
          classify_fluctuation(fa.pixels[i], mean1.pixels[i]);
      const FluctuationSplit d2 =
          classify_fluctuation(fb.pixels[i], mean2.pixels[i]);
      const double m1 = mean1.pixels[i];
      const double m2 = mean2.pixels[i];
      raw.pixels[i] += std::fabs((m1 - d1.positive) * (m2 - d2.positive)) +
                       std::fabs((m1 - d1.positive) * (m2 - d2.negative)) +
                       std::fabs((m1 - d1.negative) * (m2 - d2.positive)) +
                       std::fabs((m1 - d1.negative) * (m2 - d2.negative));
    }
  }
  const double inv = 1.0 / static_cast<double>(pairs.pairs.size());
  for (double& v : raw.pixels) v *= inv;

  ReconResult result;
  result.n_pairs = static_cast<int>(pairs.pairs.size());
  result.algorithm = Algorithm::Pnfc;
  result.image = normalize_display(raw, normalization);
  result.raw = std::move(raw);
  return result;
}

ReconResult baseline_mean(const FrameSequence& seq,
                          Normalization normalization) {
  validate_sequence(seq);
  Frame raw = mean_frame(seq.frames);
  ReconResult result;
  result.n_pairs = 0;
  result.algorithm = Algorithm::Mean;
  result.image = normalize_display(raw, normalization);
  result.raw = std::move(raw);
  return result;
}

Frame normalize_display(const Frame& raw, Normalization mode) {
  Frame out = raw;
  if (mode == Normalization::None) return out;
  if (mode == Normalization::SqrtMinmax) {
    for (double& v : out.pixels) {
      if (v < 0.0) {
        throw Error(ErrorKind::NegativePixel,
                    "sqrt-minmax normalization needs nonnegative input");
      }
      v = std::sqrt(v);
    }
  }
  // Per-channel affine map onto [0, 1]; a constant channel maps to 0.
  const int channels = out.channels;
  for (int c = 0; c < channels; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = static_cast<std::size_t>(c); i < out.pixels.size();
         i += channels) {
      lo = std::min(lo, out.pixels[i]);
      hi = std::max(hi, out.pixels[i]);
    }
    const double span = hi - lo;
    for (std::size_t i = static_cast<std::size_t>(c); i < out.pixels.size();
         i += channels) {
      out.pixels[i] = span > 0.0 ? (out.pixels[i] - lo) / span : 0.0;
    }
  }
  return out;
}

ReconResult reconstruct(const FrameSequence& seq, const ReconConfig& config) {
  validate_sequence(seq);
  switch (config.algorithm) {
    case Algorithm::Mean:
      return baseline_mean(seq, config.normalization);
    case Algorithm::Pnc:
      return pnc_reconstruct(
          seq, make_pairs(static_cast<int>(seq.frames.size()), config.pairing),
          config.normalization);
    case Algorithm::Pnfc:
      return pnfc_reconstruct(
          seq, make_pairs(static_cast<int>(seq.frames.size()), config.pairing),
          config.normalization);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown algorithm");
}

}  // namespace defog
