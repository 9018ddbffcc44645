#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "defog/types.hpp"

namespace defog {

enum class PnmFormat { P2, P3, P5, P6 };

const char* to_string(PnmFormat format);

/// Decoded PNM payload: integer samples in [0, maxval], row-major,
/// channels interleaved. P2/P5 carry one channel, P3/P6 three.
struct PnmImage {
  PnmFormat format = PnmFormat::P5;
  int maxval = 255;
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> samples;
};

/// Parses P2/P3/P5/P6 with maxval up to 65535. Header whitespace and
/// '#' comments follow the published format rules; 16-bit binary samples
/// are big-endian. Malformed input throws Error (BadMagic, BadHeader,
/// TruncatedData, SampleOutOfRange) and never invokes undefined behavior.
PnmImage decode_pnm(std::string_view bytes);

/// Serializes deterministically: identical images give identical bytes.
std::string encode_pnm(const PnmImage& image);

Frame pnm_to_frame(const PnmImage& image);

/// Quantizes pixels in [0,1] to round(pixel*maxval), half away from zero,
/// clamped to [0, maxval]. Throws ChannelMismatch if the frame's channel
/// count does not fit the format.
PnmImage frame_to_pnm(const Frame& frame, PnmFormat format, int maxval);

/// Frame with pixels = sample / maxval.
Frame read_pnm(std::string_view bytes);
std::string write_pnm(const Frame& frame, PnmFormat format, int maxval);

Frame load_pnm(const std::filesystem::path& path);
void save_pnm(const std::filesystem::path& path, const Frame& frame,
              PnmFormat format, int maxval);

std::string read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path,
                       std::string_view bytes);

}  // namespace defog
