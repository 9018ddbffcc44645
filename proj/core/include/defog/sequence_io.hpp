#pragma once

#include <filesystem>
#include <optional>

#include "defog/types.hpp"

namespace defog {

/// Sequence directory contents after loading: frames rescaled back to
/// photon-count units via the sidecar's intensity_scale, plus the fog
/// parameters when the directory was written by the simulator.
struct LoadedSequence {
  FrameSequence sequence;
  std::optional<FogParams> fog_params;
  double intensity_scale = 1.0;
};

/// Writes frames as zero-padded numbered PNM files (frame_000000.pgm or
/// .ppm) plus a sequence.json sidecar holding the timing metadata, the
/// intensity scale mapping samples back to photon counts, and the fog
/// parameters when given. maxval 65535 keeps 16-bit precision.
void write_sequence_dir(const std::filesystem::path& dir,
                        const FrameSequence& seq,
                        const FogParams* fog_params = nullptr,
                        int maxval = 65535);

LoadedSequence read_sequence_dir(const std::filesystem::path& dir);

}  // namespace defog
