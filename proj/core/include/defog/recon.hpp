#pragma once

#include <utility>
#include <vector>

#include "defog/types.hpp"

namespace defog {

/// Frame index pairs fed to the correlation estimators. Disjoint-adjacent
/// pairing groups frames (0,1),(2,3),... so each event enters exactly one
/// pair; sliding uses (0,1),(1,2),...
struct PairSet {
  std::vector<std::pair<int, int>> pairs;
  Pairing strategy = Pairing::DisjointAdjacent;
};

/// Output of one reconstruction: the display image (per the requested
/// normalization), the raw correlation values (squared-intensity units for
/// the correlation algorithms, intensity for the mean baseline), and the
/// provenance tags.
struct ReconResult {
  Frame image;
  Frame raw;
  int n_pairs = 0;
  Algorithm algorithm = Algorithm::Pnfc;
};

/// Split of one sample's deviation from its set mean into the positive and
/// negative branch; at most one of the two is nonzero.
struct FluctuationSplit {
  double positive = 0.0;
  double negative = 0.0;
};

inline FluctuationSplit classify_fluctuation(double value, double set_mean) {
  FluctuationSplit split;
  if (value > set_mean) {
    split.positive = value - set_mean;
  } else if (value < set_mean) {
    split.negative = value - set_mean;
  }
  return split;
}

PairSet make_pairs(int n_frames, Pairing strategy);

/// Pixelwise means over the first and second elements of every pair.
std::pair<Frame, Frame> partition_means(const FrameSequence& seq,
                                        const PairSet& pairs);

/// Photon-number correlation: per pixel, the average over pairs of the
/// product of the two paired intensities.
ReconResult pnc_reconstruct(const FrameSequence& seq, const PairSet& pairs,
                            Normalization normalization = Normalization::SqrtMinmax);

/// Photon-number fluctuation correlation: per pixel, fluctuations are
/// classified against the two set means and the four (mean - fluctuation)
/// branch products are summed, averaged over pairs.
ReconResult pnfc_reconstruct(const FrameSequence& seq, const PairSet& pairs,
                             Normalization normalization = Normalization::SqrtMinmax);

/// Temporal pixelwise mean of the whole sequence; models the long-exposure
/// conventional camera image used for comparison.
ReconResult baseline_mean(const FrameSequence& seq,
                          Normalization normalization = Normalization::SqrtMinmax);

/// Display normalization. minmax maps each channel affinely onto [0,1]
/// (a constant channel maps to 0); sqrt-minmax takes a pixelwise square
/// root first, restoring intensity scale for squared-intensity inputs.
Frame normalize_display(const Frame& raw, Normalization mode);

/// Builds pairs per config and dispatches to the selected algorithm.
ReconResult reconstruct(const FrameSequence& seq, const ReconConfig& config);

}  // namespace defog
