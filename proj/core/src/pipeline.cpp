#include "defog/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <tuple>

#include "defog/metrics.hpp"
#include "defog/pnm.hpp"
#include "defog/recon.hpp"
#include "defog/sequence_io.hpp"
#include "defog/targets.hpp"
#include "fog_json.hpp"

namespace defog {

namespace {

constexpr const char* kRunSchema = "defog-run/1";

detail::Json recon_to_json(const ReconConfig& r) {
  detail::Json j;
  j["algorithm"] = to_string(r.algorithm);
  j["pairing"] = to_string(r.pairing);
  j["normalization"] = to_string(r.normalization);
  return j;
}

ReconConfig recon_from_json(const detail::Json& j) {
  ReconConfig r;
  if (j.contains("algorithm")) {
    r.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  }
  if (j.contains("pairing")) {
    r.pairing = parse_pairing(j.at("pairing").get<std::string>());
  }
  if (j.contains("normalization")) {
    r.normalization =
        parse_normalization(j.at("normalization").get<std::string>());
  }
  return r;
}

Frame load_target(const RunConfig& config) {
  if (config.target_path.empty()) return make_letter_g(64);
  return load_pnm(config.target_path);
}

Frame scale_target(const Frame& target, double scale) {
  if (!(scale > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "target_scale must be > 0");
  }
  Frame scaled = target;
  for (double& v : scaled.pixels) v *= scale;
  return scaled;
}

void write_run_json(const RunConfig& config, const std::string& subcommand) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    throw Error(ErrorKind::IoError, "cannot create " + config.out_dir + ": " +
                                        ec.message());
  }
  write_binary_file(std::filesystem::path(config.out_dir) / "run.json",
                    run_config_to_json(config, subcommand));
}

detail::Json conditions_to_json(const ConditionReport& c) {
  detail::Json j;
  j["condition_i_holds"] = c.condition_i_holds;
  j["condition_ii_holds"] = c.condition_ii_holds;
  j["mean_frame_deviation"] = c.mean_frame_deviation;
  j["ambient_autocorr"] = c.ambient_autocorr;
  j["epsilon"] = c.epsilon;
  return j;
}

// Closed-form sanity check of the correlation kernels on a constant scene:
// each pair product is c*c, and every pnfc branch sum collapses to 4*c*c.
// A failure here means the build is broken, not the data.
void kernel_self_check() {
  constexpr double c = 100.0;
  FrameSequence seq;
  seq.frames.assign(4, Frame::filled(4, 4, 1, c));
  const PairSet pairs = make_pairs(4, Pairing::DisjointAdjacent);
  const ReconResult pnc = pnc_reconstruct(seq, pairs, Normalization::None);
  const ReconResult pnfc = pnfc_reconstruct(seq, pairs, Normalization::None);
  for (std::size_t i = 0; i < pnc.raw.pixels.size(); ++i) {
    if (std::fabs(pnc.raw.pixels[i] - c * c) > 1e-6 ||
        std::fabs(pnfc.raw.pixels[i] - 4.0 * c * c) > 1e-6) {
      throw Error(ErrorKind::RangeError,
                  "correlation kernel self-check failed");
    }
  }
}

ReconResult run_algorithm(const FrameSequence& seq, Algorithm algorithm,
                          const ReconConfig& recon) {
  if (algorithm == Algorithm::Mean) {
    return baseline_mean(seq, recon.normalization);
  }
  const PairSet pairs =
      make_pairs(static_cast<int>(seq.frames.size()), recon.pairing);
  return algorithm == Algorithm::Pnc
             ? pnc_reconstruct(seq, pairs, recon.normalization)
             : pnfc_reconstruct(seq, pairs, recon.normalization);
}

}  // namespace

std::string run_config_to_json(const RunConfig& config,
                               const std::string& subcommand) {
  detail::Json j;
  j["schema"] = kRunSchema;
  j["subcommand"] = subcommand;
  j["target"] = config.target_path;
  j["input_dir"] = config.input_dir;
  j["out_dir"] = config.out_dir;
  j["target_scale"] = config.target_scale;
  j["fog"] = detail::fog_params_to_json(config.fog);
  j["recon"] = recon_to_json(config.recon);
  j["sweep"] = config.sweep;
  j["seeds"] = config.seeds;
  j["require_conditions"] = config.require_conditions;
  j["condition_epsilon"] = config.condition_epsilon;
  return j.dump(2) + "\n";
}

RunConfig run_config_from_json(const std::string& json_text) {
  detail::Json j;
  try {
    j = detail::Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadHeader, std::string("run config: ") + e.what());
  }
  RunConfig config;
  try {
    config.target_path = j.value("target", config.target_path);
    config.input_dir = j.value("input_dir", config.input_dir);
    config.out_dir = j.value("out_dir", config.out_dir);
    config.target_scale = j.value("target_scale", config.target_scale);
    if (j.contains("fog")) {
      config.fog = detail::fog_params_from_json(j.at("fog"));
    }
    if (j.contains("recon")) {
      config.recon = recon_from_json(j.at("recon"));
    }
    if (j.contains("sweep")) {
      config.sweep = j.at("sweep").get<std::vector<int>>();
    }
    if (j.contains("seeds")) {
      config.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    }
    config.require_conditions =
        j.value("require_conditions", config.require_conditions);
    config.condition_epsilon =
        j.value("condition_epsilon", config.condition_epsilon);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadHeader, std::string("run config: ") + e.what());
  }
  return config;
}

int resolve_thread_count() {
  const char* env = std::getenv("DEFOG_THREADS");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || parsed < 0) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string("DEFOG_THREADS must be a nonnegative integer, "
                              "got '") +
                      env + "'");
    }
    if (parsed > 0) return static_cast<int>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SimulateOutcome run_simulate(const RunConfig& config) {
  if (config.out_dir.empty()) {
    throw Error(ErrorKind::InvalidArgument, "simulate needs an output directory");
  }
  const Frame target = scale_target(load_target(config), config.target_scale);
  const FrameSequence seq = simulate_sequence(target, config.fog);

  SimulateOutcome outcome;
  outcome.conditions = check_conditions(seq, config.condition_epsilon);
  outcome.sequence_dir = config.out_dir;
  write_sequence_dir(outcome.sequence_dir, seq, &config.fog);
  write_run_json(config, "simulate");
  return outcome;
}

DefogOutcome run_defog(const RunConfig& config) {
  if (config.input_dir.empty()) {
    throw Error(ErrorKind::InvalidArgument, "defog needs an input directory");
  }
  if (config.out_dir.empty()) {
    throw Error(ErrorKind::InvalidArgument, "defog needs an output directory");
  }
  if (std::filesystem::path(config.input_dir).lexically_normal() ==
      std::filesystem::path(config.out_dir).lexically_normal()) {
    throw Error(ErrorKind::InvalidArgument,
                "input and output directories must differ");
  }
  const LoadedSequence loaded = read_sequence_dir(config.input_dir);

  DefogOutcome outcome;
  outcome.conditions =
      check_conditions(loaded.sequence, config.condition_epsilon);
  outcome.result = reconstruct(loaded.sequence, config.recon);

  write_run_json(config, "defog");
  const std::filesystem::path out(config.out_dir);
  const bool color = outcome.result.image.channels == 3;
  const PnmFormat format = color ? PnmFormat::P6 : PnmFormat::P5;
  const char* ext = color ? "ppm" : "pgm";

  // The display image is already in [0,1]; the raw correlation image is
  // rescaled by its peak, which result.json records as raw_scale.
  Frame display = outcome.result.image;
  if (config.recon.normalization == Normalization::None) {
    display = normalize_display(outcome.result.raw, Normalization::Minmax);
  }
  save_pnm(out / (std::string("recon.") + ext), display, format, 65535);

  double raw_peak = 0.0;
  for (double v : outcome.result.raw.pixels) raw_peak = std::max(raw_peak, v);
  const double raw_scale = raw_peak > 0.0 ? raw_peak : 1.0;
  Frame raw_scaled = outcome.result.raw;
  for (double& v : raw_scaled.pixels) v /= raw_scale;
  save_pnm(out / (std::string("recon_raw.") + ext), raw_scaled, format, 65535);

  detail::Json j;
  j["schema"] = "defog-result/1";
  j["algorithm"] = to_string(config.recon.algorithm);
  j["pairing"] = to_string(config.recon.pairing);
  j["normalization"] = to_string(config.recon.normalization);
  j["n_pairs"] = outcome.result.n_pairs;
  j["n_frames"] = loaded.sequence.frames.size();
  j["raw_scale"] = raw_scale;
  j["conditions"] = conditions_to_json(outcome.conditions);
  write_binary_file(out / "result.json", j.dump(2) + "\n");
  return outcome;
}

PipelineOutcome run_pipeline(const RunConfig& config) {
  if (config.out_dir.empty()) {
    throw Error(ErrorKind::InvalidArgument, "pipeline needs an output directory");
  }
  if (config.recon.normalization == Normalization::None) {
    throw Error(ErrorKind::InvalidArgument,
                "pipeline scoring needs a display normalization "
                "(minmax or sqrt-minmax)");
  }
  kernel_self_check();

  const Frame reference = load_target(config);
  const Frame target = scale_target(reference, config.target_scale);
  std::vector<int> sweep = config.sweep;
  if (sweep.empty()) sweep = {10, 100, 200, 300};
  for (int n : sweep) {
    if (n < 2) {
      throw Error(ErrorKind::InvalidArgument,
                  "sweep measurement counts must be >= 2, got " +
                      std::to_string(n));
    }
  }
  if (config.seeds.empty()) {
    throw Error(ErrorKind::EmptyInput, "pipeline needs at least one seed");
  }

  write_run_json(config, "pipeline");
  const std::filesystem::path cells_dir =
      std::filesystem::path(config.out_dir) / "cells";
  std::error_code ec;
  std::filesystem::create_directories(cells_dir, ec);
  if (ec) {
    throw Error(ErrorKind::IoError,
                "cannot create " + cells_dir.string() + ": " + ec.message());
  }

  struct Cell {
    int frames = 0;
    std::uint64_t seed = 0;
  };
  std::vector<Cell> cells;
  for (std::uint64_t seed : config.seeds) {
    for (int n : sweep) cells.push_back({n, seed});
  }

  constexpr Algorithm kAlgorithms[] = {Algorithm::Pnc, Algorithm::Pnfc};
  std::vector<std::vector<ReportRow>> cell_rows(cells.size());
  std::vector<std::string> cell_errors(cells.size());

  auto run_cell = [&](std::size_t index) {
    const Cell& cell = cells[index];
    FogParams fog = config.fog;
    fog.n_frames = cell.frames;
    fog.seed = cell.seed;
    const FrameSequence seq = simulate_sequence(target, fog);
    const ConditionReport conditions =
        check_conditions(seq, config.condition_epsilon);
    const bool conditions_ok =
        conditions.condition_i_holds && conditions.condition_ii_holds;

    // A degenerate cell (every frame identical) pins the estimators to
    // their closed forms; verify them and surface the outcome per row.
    bool is_constant = true;
    for (std::size_t t = 1; t < seq.frames.size() && is_constant; ++t) {
      is_constant = seq.frames[t].pixels == seq.frames[0].pixels;
    }

    const bool color = target.channels == 3;
    for (Algorithm algorithm : kAlgorithms) {
      const ReconResult result = run_algorithm(seq, algorithm, config.recon);
      ReportRow row;
      row.algorithm = to_string(algorithm);
      row.n_pairs = result.n_pairs;
      row.n_frames = cell.frames;
      row.seed = cell.seed;
      row.pairing = to_string(config.recon.pairing);
      row.normalization = to_string(config.recon.normalization);
      row.metrics = compare(result.image, reference);
      if (config.require_conditions && !conditions_ok) {
        row.status = "conditions-violated";
      } else if (is_constant) {
        const double factor = algorithm == Algorithm::Pnfc ? 4.0 : 1.0;
        bool closed_form_ok = true;
        for (std::size_t i = 0; i < result.raw.pixels.size(); ++i) {
          const double want =
              factor * seq.frames[0].pixels[i] * seq.frames[0].pixels[i];
          if (std::fabs(result.raw.pixels[i] - want) >
              1e-9 * std::max(1.0, want)) {
            closed_form_ok = false;
            break;
          }
        }
        row.status = closed_form_ok ? "closed-form-pass" : "closed-form-fail";
      }
      cell_rows[index].push_back(row);

      const std::string name = std::string(to_string(algorithm)) + "_n" +
                               std::to_string(cell.frames) + "_seed" +
                               std::to_string(cell.seed) +
                               (color ? ".ppm" : ".pgm");
      save_pnm(cells_dir / name, result.image,
               color ? PnmFormat::P6 : PnmFormat::P5, 65535);
    }
  };

  const int n_threads = std::min<int>(resolve_thread_count(),
                                      static_cast<int>(cells.size()));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        try {
          run_cell(i);
        } catch (const std::exception& e) {
          cell_errors[i] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    for (const std::string& err : cell_errors) {
      if (!err.empty()) {
        throw Error(ErrorKind::RangeError, "pipeline cell failed: " + err);
      }
    }
  }

  PipelineOutcome outcome;
  for (const auto& rows : cell_rows) {
    outcome.rows.insert(outcome.rows.end(), rows.begin(), rows.end());
  }
  std::sort(outcome.rows.begin(), outcome.rows.end(),
            [](const ReportRow& a, const ReportRow& b) {
              return std::tie(a.algorithm, a.n_frames, a.seed) <
                     std::tie(b.algorithm, b.n_frames, b.seed);
            });
  for (const ReportRow& row : outcome.rows) {
    if (row.status != "ok" && row.status != "closed-form-pass") {
      outcome.all_ok = false;
    }
  }
  outcome.csv_text = write_csv_report(outcome.rows);
  write_binary_file(std::filesystem::path(config.out_dir) / "report.csv",
                    outcome.csv_text);
  return outcome;
}

}  // namespace defog
