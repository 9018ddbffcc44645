// Acceptance gate: one self-contained check per release criterion, each
// printing exactly one [PASS]/[FAIL] line. Exits nonzero if any fail.
//
// The checks exercise the public API the way the documented workflows do:
// estimator kernels against scalar-loop oracles, closed forms, the static
// McCartney limit, ambient suppression, reconstruction quality and trends on
// the letter-G scene, brightness behavior, metric correctness, CLI-level
// determinism across worker counts, and codec robustness.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "defog/fogsim.hpp"
#include "defog/metrics.hpp"
#include "defog/pnm.hpp"
#include "defog/recon.hpp"
#include "defog/targets.hpp"
#include "defog/types.hpp"
#include "oracles.hpp"

using namespace defog;

namespace {

int g_failures = 0;

std::string fmt(const char* f, ...) {
  char buffer[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buffer, sizeof(buffer), f, args);
  va_end(args);
  return buffer;
}

void report(int id, const std::string& label, bool ok,
            const std::string& detail) {
  std::printf("[%s] %2d. %s (%s)\n", ok ? "PASS" : "FAIL", id, label.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

struct Stopwatch {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

FrameSequence sequence_from(const std::vector<oracle::Image>& frames, int w,
                            int h) {
  FrameSequence seq;
  for (const oracle::Image& img : frames) {
    Frame f = Frame::zeros(w, h, 1);
    f.pixels = img;
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

oracle::Pairs sliding_pairs(int n_frames) {
  oracle::Pairs pairs;
  for (int i = 0; i + 1 < n_frames; ++i) pairs.emplace_back(i, i + 1);
  return pairs;
}

double max_rel_err(const std::vector<double>& got, const oracle::Image& want) {
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double scale = std::max(1.0, std::fabs(want[i]));
    worst = std::max(worst, std::fabs(got[i] - want[i]) / scale);
  }
  return worst;
}

/// Default letter-G measurement scene: full-scale pixels worth 10000
/// photons, beta0*d = 1.5, ambient at 0.8x the peak signal, shot noise on.
Frame letter_g_target() {
  Frame target = make_letter_g(64);
  for (double& v : target.pixels) v *= 10000.0;
  return target;
}

FogParams letter_g_fog(std::uint64_t seed, int n_frames) {
  FogParams fog;
  fog.beta0 = 2.5;
  fog.beta_sigma = 0.3;
  fog.d = 0.6;
  fog.ambient_mean = 8000.0;
  fog.ambient_sigma = 0.3;
  fog.k_factor = 1.0;
  fog.shot_noise = true;
  fog.seed = seed;
  fog.n_frames = n_frames;
  return fog;
}

void criterion_1_oracle_equivalence() {
  Stopwatch clock;
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<oracle::Image> frames =
        oracle::random_frames(rng, 8, 16, 0.0, 100.0);
    const FrameSequence seq = sequence_from(frames, 4, 4);
    for (Pairing pairing : {Pairing::DisjointAdjacent, Pairing::Sliding}) {
      const PairSet pairs = make_pairs(8, pairing);
      const oracle::Pairs ref_pairs = pairing == Pairing::Sliding
                                          ? sliding_pairs(8)
                                          : oracle::disjoint_pairs(8);
      const ReconResult pnc = pnc_reconstruct(seq, pairs, Normalization::None);
      const ReconResult pnfc =
          pnfc_reconstruct(seq, pairs, Normalization::None);
      worst = std::max(worst, max_rel_err(pnc.raw.pixels,
                                          oracle::pnc_raw(frames, ref_pairs)));
      worst = std::max(worst, max_rel_err(pnfc.raw.pixels,
                                          oracle::pnfc_raw(frames, ref_pairs)));
    }
  }
  const double elapsed = clock.seconds();
  report(1, "pnc/pnfc match the scalar-loop oracles on 50 random sequences",
         worst <= 1e-12 && elapsed < 5.0,
         fmt("max rel err %.2e, %.2f s", worst, elapsed));
}

void criterion_2_closed_forms() {
  double worst = 0.0;
  for (double c : {0.0, 1.0, 3.7, 12345.678}) {
    FrameSequence seq;
    seq.frames.assign(6, Frame::filled(3, 3, 1, c));
    for (Pairing pairing : {Pairing::DisjointAdjacent, Pairing::Sliding}) {
      const PairSet pairs = make_pairs(6, pairing);
      const ReconResult pnc = pnc_reconstruct(seq, pairs, Normalization::None);
      const ReconResult pnfc =
          pnfc_reconstruct(seq, pairs, Normalization::None);
      const double scale = std::max(1.0, c * c);
      for (double v : pnc.raw.pixels) {
        worst = std::max(worst, std::fabs(v - c * c) / scale);
      }
      for (double v : pnfc.raw.pixels) {
        worst = std::max(worst, std::fabs(v - 4.0 * c * c) / scale);
      }
    }
  }
  report(2, "constant sequences hit pnc = c^2 and pnfc = 4c^2 exactly",
         worst <= 1e-12, fmt("max rel err %.2e", worst));
}

void criterion_3_static_limit() {
  Frame target = make_color_gradient(16);
  for (double& v : target.pixels) v *= 5000.0;
  FogParams fog = letter_g_fog(7, 5);
  fog.beta_sigma = 0.0;
  fog.ambient_sigma = 0.0;
  fog.shot_noise = false;

  const double tr = std::exp(-fog.beta0 * fog.d);
  const double airlight = fog.k_factor * fog.ambient_mean * (1.0 - tr);
  const FrameSequence seq = simulate_sequence(target, fog);
  double worst = 0.0;
  for (const Frame& frame : seq.frames) {
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
      const double want = target.pixels[i] * tr + airlight;
      worst = std::max(worst, std::fabs(frame.pixels[i] - want) /
                                  std::max(1.0, std::fabs(want)));
    }
  }
  report(3, "static limit reproduces the McCartney value at every pixel",
         worst <= 1e-12, fmt("max rel err %.2e over 5 frames", worst));
}

void criterion_4_ambient_suppression() {
  FogParams fog = letter_g_fog(1, 600);
  fog.ambient_mean = 100.0;
  const Frame target = Frame::zeros(32, 32, 1);
  const FrameSequence seq = simulate_sequence(target, fog);
  const PairSet pairs =
      make_pairs(static_cast<int>(seq.frames.size()), Pairing::DisjointAdjacent);
  const ReconResult pnfc = pnfc_reconstruct(seq, pairs, Normalization::None);

  // Spatial uniformity on the photon-count scale: sqrt of the raw
  // correlation, which is scale-free under the minmax display mapping.
  double mean = 0.0;
  std::vector<double> root(pnfc.raw.pixels.size());
  for (std::size_t i = 0; i < root.size(); ++i) {
    root[i] = std::sqrt(pnfc.raw.pixels[i]);
    mean += root[i];
  }
  mean /= static_cast<double>(root.size());
  double var = 0.0;
  for (double v : root) var += (v - mean) * (v - mean);
  var /= static_cast<double>(root.size());
  const double cov = mean > 0.0 ? std::sqrt(var) / mean : 1.0;
  report(4, "ambient-only pnfc image is spatially flat (600 frames)",
         mean > 0.0 && cov < 0.05, fmt("coefficient of variation %.4f", cov));
}

void criterion_5_defogging_improvement() {
  Stopwatch clock;
  const Frame reference = make_letter_g(64);
  const FrameSequence seq = simulate_sequence(letter_g_target(),
                                              letter_g_fog(1, 20));
  const PairSet pairs = make_pairs(20, Pairing::DisjointAdjacent);
  const ReconResult pnfc =
      pnfc_reconstruct(seq, pairs, Normalization::SqrtMinmax);
  const ReconResult mean = baseline_mean(seq, Normalization::SqrtMinmax);
  const Frame frame0 =
      normalize_display(seq.frames.front(), Normalization::SqrtMinmax);

  const double ssim_pnfc = ssim(pnfc.image, reference);
  const double ssim_frame0 = ssim(frame0, reference);
  const double ssim_mean = ssim(mean.image, reference);
  const double elapsed = clock.seconds();
  report(5, "letter-G pnfc beats one foggy frame by 0.15 SSIM and the mean",
         ssim_pnfc >= ssim_frame0 + 0.15 && ssim_pnfc > ssim_mean &&
             elapsed < 10.0,
         fmt("ssim pnfc %.4f, frame0 %.4f, mean %.4f, %.2f s", ssim_pnfc,
             ssim_frame0, ssim_mean, elapsed));
}

void criterion_6_measurement_count_trend() {
  Stopwatch clock;
  const Frame reference = make_letter_g(64);
  const Frame target = letter_g_target();
  const int counts[] = {10, 100, 200, 300};
  double medians[2][4];
  for (int ci = 0; ci < 4; ++ci) {
    std::vector<double> ssims_pnc, ssims_pnfc;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const FrameSequence seq =
          simulate_sequence(target, letter_g_fog(seed, counts[ci]));
      const PairSet pairs =
          make_pairs(counts[ci], Pairing::DisjointAdjacent);
      ssims_pnc.push_back(ssim(
          pnc_reconstruct(seq, pairs, Normalization::SqrtMinmax).image,
          reference));
      ssims_pnfc.push_back(ssim(
          pnfc_reconstruct(seq, pairs, Normalization::SqrtMinmax).image,
          reference));
    }
    std::sort(ssims_pnc.begin(), ssims_pnc.end());
    std::sort(ssims_pnfc.begin(), ssims_pnfc.end());
    medians[0][ci] = ssims_pnc[2];
    medians[1][ci] = ssims_pnfc[2];
  }
  bool monotone = true;
  for (int a = 0; a < 2; ++a) {
    for (int ci = 1; ci < 4; ++ci) {
      if (medians[a][ci] < medians[a][ci - 1]) monotone = false;
    }
  }
  const double elapsed = clock.seconds();
  report(6, "median SSIM rises with the measurement count (5 seeds)",
         monotone && elapsed < 120.0,
         fmt("pnc %.3f/%.3f/%.3f/%.3f, pnfc %.3f/%.3f/%.3f/%.3f, %.1f s",
             medians[0][0], medians[0][1], medians[0][2], medians[0][3],
             medians[1][0], medians[1][1], medians[1][2], medians[1][3],
             elapsed));
}

void criterion_7_brightness() {
  const Frame reference = make_letter_g(64);
  const FrameSequence seq = simulate_sequence(letter_g_target(),
                                              letter_g_fog(1, 20));
  const PairSet pairs = make_pairs(20, Pairing::DisjointAdjacent);
  const ReconResult pnc = pnc_reconstruct(seq, pairs, Normalization::None);

  double peak = 0.0;
  for (const Frame& frame : seq.frames) {
    for (double v : frame.pixels) peak = std::max(peak, v);
  }
  // Raw pair products live on the intensity-squared scale, so the
  // sequence's own peak enters squared. No other rescaling is applied.
  double candidate_mean = 0.0;
  for (double v : pnc.raw.pixels) candidate_mean += v / (peak * peak);
  candidate_mean /= static_cast<double>(pnc.raw.pixels.size());
  double reference_mean = 0.0;
  for (double v : reference.pixels) reference_mean += v;
  reference_mean /= static_cast<double>(reference.pixels.size());

  report(7, "peak-scaled reconstruction is dimmer than the clean target",
         peak > 0.0 && candidate_mean < reference_mean,
         fmt("mean %.4f vs target %.4f", candidate_mean, reference_mean));
}

void criterion_8_metric_correctness() {
  std::mt19937_64 rng(808);
  std::vector<oracle::Image> corpus;
  for (int i = 0; i < 6; ++i) {
    corpus.push_back(oracle::random_image(rng, 32 * 32, 0.0, 1.0));
  }
  corpus.push_back(make_letter_g(32).pixels);
  const Frame gradient = make_color_gradient(32);
  oracle::Image plane(32 * 32);
  for (std::size_t i = 0; i < plane.size(); ++i) {
    plane[i] = gradient.pixels[i * 3];  // red channel: horizontal ramp
  }
  corpus.push_back(plane);
  oracle::Image ramp(32 * 32);
  for (std::size_t i = 0; i < ramp.size(); ++i) {
    ramp[i] = 0.5 + 0.5 * std::sin(static_cast<double>(i) / 37.0);
  }
  corpus.push_back(ramp);
  oracle::Image noisy = corpus[6];
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  for (double& v : noisy) v = std::clamp(v + jitter(rng), 0.0, 1.0);
  corpus.push_back(noisy);

  double worst = 0.0;
  bool identities = true;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    Frame a = Frame::zeros(32, 32, 1);
    a.pixels = corpus[i];
    Frame b = Frame::zeros(32, 32, 1);
    b.pixels = corpus[(i + 1) % corpus.size()];

    const double lib_ssim = ssim(a, b);
    const double ref_ssim = oracle::ssim_plane(a.pixels, b.pixels, 32, 32);
    worst = std::max(worst, std::fabs(lib_ssim - ref_ssim));
    const double lib_psnr = psnr(a, b);
    const double ref_psnr = oracle::psnr(a.pixels, b.pixels);
    if (std::isinf(lib_psnr) || std::isinf(ref_psnr)) {
      if (!(std::isinf(lib_psnr) && std::isinf(ref_psnr))) identities = false;
    } else {
      worst = std::max(worst, std::fabs(lib_psnr - ref_psnr));
    }

    if (ssim(a, a) != 1.0) identities = false;
    if (!std::isinf(psnr(a, a))) identities = false;
  }
  report(8, "ssim/psnr match the independent reference on a 10-image corpus",
         worst <= 1e-9 && identities,
         fmt("max abs err %.2e, identities %s", worst,
             identities ? "hold" : "BROKEN"));
}

void criterion_9_thread_determinism() {
  const char* cli = std::getenv("DEFOG_CLI");
  if (cli == nullptr || *cli == '\0') {
    report(9, "pipeline output is byte-identical for 1 and 8 workers", false,
           "DEFOG_CLI is not set");
    return;
  }
  const std::filesystem::path root =
      std::filesystem::temp_directory_path() /
      ("defog_acceptance_" + std::to_string(::getpid()));
  std::filesystem::remove_all(root);
  std::filesystem::create_directories(root);
  const std::filesystem::path target_path = root / "target.pgm";
  save_pnm(target_path, make_letter_g(16), PnmFormat::P5, 255);

  auto run = [&](int threads, const std::string& out) {
    const std::string command =
        "DEFOG_THREADS=" + std::to_string(threads) + " \"" +
        std::string(cli) + "\" pipeline --target " + target_path.string() +
        " --sweep 4,6 --seeds 1,2 --out " + out + " >/dev/null 2>&1";
    return std::system(command.c_str());
  };
  const int rc1 = run(1, (root / "t1").string());
  const int rc8 = run(8, (root / "t8").string());

  bool identical = rc1 == 0 && rc8 == 0;
  int files = 0;
  if (identical) {
    std::vector<std::filesystem::path> names;
    for (const auto& entry :
         std::filesystem::recursive_directory_iterator(root / "t1")) {
      if (entry.is_regular_file()) {
        names.push_back(std::filesystem::relative(entry.path(), root / "t1"));
      }
    }
    std::sort(names.begin(), names.end());
    files = static_cast<int>(names.size());
    for (const auto& name : names) {
      if (name.filename() == "run.json") continue;  // records out_dir
      if (!std::filesystem::exists(root / "t8" / name) ||
          read_binary_file(root / "t1" / name) !=
              read_binary_file(root / "t8" / name)) {
        identical = false;
        break;
      }
    }
  }
  std::filesystem::remove_all(root);
  report(9, "pipeline output is byte-identical for 1 and 8 workers", identical,
         fmt("%d files compared, exit codes %d/%d", files, rc1, rc8));
}

void criterion_10_codec_robustness() {
  std::mt19937_64 rng(1010);
  const PnmFormat formats[] = {PnmFormat::P2, PnmFormat::P3, PnmFormat::P5,
                               PnmFormat::P6};
  bool round_trips = true;
  std::uniform_int_distribution<int> dim(1, 16);
  for (int trial = 0; trial < 100 && round_trips; ++trial) {
    const PnmFormat format = formats[trial % 4];
    const int maxval = (trial / 4) % 2 == 0 ? 255 : 65535;
    PnmImage img;
    img.format = format;
    img.maxval = maxval;
    img.width = dim(rng);
    img.height = dim(rng);
    const int channels =
        (format == PnmFormat::P3 || format == PnmFormat::P6) ? 3 : 1;
    img.samples.resize(
        static_cast<std::size_t>(img.width) * img.height * channels);
    std::uniform_int_distribution<int> value(0, maxval);
    for (std::uint16_t& s : img.samples) {
      s = static_cast<std::uint16_t>(value(rng));
    }
    const PnmImage back = decode_pnm(encode_pnm(img));
    round_trips = back.samples == img.samples && back.maxval == img.maxval &&
                  back.width == img.width && back.height == img.height &&
                  back.format == img.format;
  }

  // Header-mutation fuzz: mutations may still decode, but any failure must
  // surface as a structured defog::Error, never another exception type.
  std::string base = std::string("P5\n6 4\n255\n");
  for (int i = 0; i < 24; ++i) base.push_back(static_cast<char>(i * 10));
  int structured = 0;
  bool only_structured = true;
  std::uniform_int_distribution<int> byte(0, 255);
  for (int trial = 0; trial < 1000; ++trial) {
    std::string bytes = base;
    std::uniform_int_distribution<std::size_t> pos(0, bytes.size() - 1);
    const int mutations = 1 + trial % 4;
    for (int m = 0; m < mutations && !bytes.empty(); ++m) {
      const std::size_t at = pos(rng) % bytes.size();
      switch (byte(rng) % 3) {
        case 0: bytes[at] = static_cast<char>(byte(rng)); break;
        case 1: bytes.resize(at); break;
        default:
          bytes.insert(bytes.begin() + static_cast<std::ptrdiff_t>(at),
                       static_cast<char>(byte(rng)));
          break;
      }
    }
    try {
      (void)decode_pnm(bytes);
    } catch (const Error&) {
      ++structured;
    } catch (...) {
      only_structured = false;
    }
  }
  report(10, "PNM round-trip identity plus 1000-case fuzz without crashes",
         round_trips && only_structured && structured > 0,
         fmt("100 round trips, %d structured rejections", structured));
}

}  // namespace

int main() {
  std::printf("defog acceptance gate\n");
  using CriterionFn = void (*)();
  const CriterionFn criteria[] = {
      criterion_1_oracle_equivalence, criterion_2_closed_forms,
      criterion_3_static_limit,       criterion_4_ambient_suppression,
      criterion_5_defogging_improvement, criterion_6_measurement_count_trend,
      criterion_7_brightness,         criterion_8_metric_correctness,
      criterion_9_thread_determinism, criterion_10_codec_robustness,
  };
  int id = 1;
  for (CriterionFn fn : criteria) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, "criterion raised an exception", false, e.what());
    }
    ++id;
  }
  if (g_failures == 0) {
    std::printf("all 10 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", g_failures);
  return 1;
}
