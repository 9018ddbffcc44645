#include "defog/sequence_io.hpp"

#include <algorithm>
#include <cstdio>

#include "defog/pnm.hpp"
#include "fog_json.hpp"

namespace defog {

namespace {

constexpr const char* kSidecarName = "sequence.json";
constexpr const char* kSchema = "defog-sequence/1";

std::string frame_file_name(int index, int channels) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%06d.%s", index,
                channels == 3 ? "ppm" : "pgm");
  return buf;
}

}  // namespace

void write_sequence_dir(const std::filesystem::path& dir,
                        const FrameSequence& seq, const FogParams* fog_params,
                        int maxval) {
  validate_sequence(seq);
  if (maxval < 1 || maxval > 65535) {
    throw Error(ErrorKind::InvalidArgument,
                "maxval must be in [1, 65535], got " + std::to_string(maxval));
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorKind::IoError,
                "cannot create " + dir.string() + ": " + ec.message());
  }

  // One scale for the whole sequence keeps per-frame brightness comparable
  // after quantization. Unit scale when every sample is zero.
  double peak = 0.0;
  for (const Frame& f : seq.frames) {
    for (double v : f.pixels) peak = std::max(peak, v);
  }
  const double intensity_scale = peak > 0.0 ? peak : 1.0;

  const Frame& first = seq.frames.front();
  const PnmFormat format =
      first.channels == 3 ? PnmFormat::P6 : PnmFormat::P5;
  for (std::size_t t = 0; t < seq.frames.size(); ++t) {
    Frame scaled = seq.frames[t];
    for (double& v : scaled.pixels) v /= intensity_scale;
    save_pnm(dir / frame_file_name(static_cast<int>(t), first.channels),
             scaled, format, maxval);
  }

  detail::Json j;
  j["schema"] = kSchema;
  j["n_frames"] = seq.frames.size();
  j["width"] = first.width;
  j["height"] = first.height;
  j["channels"] = first.channels;
  j["maxval"] = maxval;
  j["intensity_scale"] = intensity_scale;
  j["integration_time_s"] = seq.integration_time_s;
  j["interval_s"] = seq.interval_s;
  j["coherence_time_s"] = seq.coherence_time_s;
  if (fog_params != nullptr) {
    j["fog_params"] = detail::fog_params_to_json(*fog_params);
  }
  write_binary_file(dir / kSidecarName, j.dump(2) + "\n");
}

LoadedSequence read_sequence_dir(const std::filesystem::path& dir) {
  const std::filesystem::path sidecar = dir / kSidecarName;
  detail::Json j;
  try {
    j = detail::Json::parse(read_binary_file(sidecar));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadHeader,
                sidecar.string() + ": " + e.what());
  }
  if (j.value("schema", std::string()) != kSchema) {
    throw Error(ErrorKind::BadHeader,
                sidecar.string() + ": unknown schema");
  }

  LoadedSequence loaded;
  const int n_frames = j.value("n_frames", 0);
  const int width = j.value("width", 0);
  const int height = j.value("height", 0);
  const int channels = j.value("channels", 1);
  loaded.intensity_scale = j.value("intensity_scale", 1.0);
  if (n_frames < 2 || width < 1 || height < 1 ||
      (channels != 1 && channels != 3) || !(loaded.intensity_scale > 0.0)) {
    throw Error(ErrorKind::BadHeader,
                sidecar.string() + ": invalid sequence description");
  }

  loaded.sequence.integration_time_s =
      j.value("integration_time_s", loaded.sequence.integration_time_s);
  loaded.sequence.interval_s = j.value("interval_s", loaded.sequence.interval_s);
  loaded.sequence.coherence_time_s =
      j.value("coherence_time_s", loaded.sequence.coherence_time_s);
  if (j.contains("fog_params")) {
    loaded.fog_params = detail::fog_params_from_json(j.at("fog_params"));
  }

  loaded.sequence.frames.reserve(static_cast<std::size_t>(n_frames));
  for (int t = 0; t < n_frames; ++t) {
    Frame f = load_pnm(dir / frame_file_name(t, channels));
    if (f.width != width || f.height != height || f.channels != channels) {
      throw Error(ErrorKind::ShapeMismatch,
                  frame_file_name(t, channels) +
                      " does not match the sidecar dimensions");
    }
    for (double& v : f.pixels) v *= loaded.intensity_scale;
    loaded.sequence.frames.push_back(std::move(f));
  }
  validate_sequence(loaded.sequence);
  return loaded;
}

}  // namespace defog
