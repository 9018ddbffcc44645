// defog: simulate time-variant fog over a target image and reconstruct the
// target back out of the fluctuating frames.
//
// Subcommands: simulate, defog, metrics, pipeline, conditions.
// Exit codes: 0 success, 1 usage/IO/validation error, 2 condition
// enforcement failure (--require-conditions with a violated condition).

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "defog/csv.hpp"
#include "defog/metrics.hpp"
#include "defog/pipeline.hpp"
#include "defog/pnm.hpp"
#include "defog/sequence_io.hpp"
#include "defog/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConditions = 2;

// Options whose CLI flags override values loaded from --config. Each entry
// is applied only when the user actually passed the flag.
struct CommonOpts {
  std::string config_path;
  std::string target;
  std::string in_dir;
  std::string out_dir;
  int frames = 20;
  std::uint64_t seed = 1;
  std::string algorithm = "pnfc";
  std::string pairing = "disjoint";
  std::string normalize = "sqrt-minmax";
  std::vector<int> sweep;
  std::vector<std::uint64_t> seeds;
  bool require_conditions = false;
  double epsilon = 1e-3;
  double target_scale = 10000.0;

  double beta0 = 2.5;
  double beta_sigma = 0.3;
  double distance = 0.6;
  double ambient_mean = 8000.0;
  double ambient_sigma = 0.3;
  double k_factor = 1.0;
  bool no_shot_noise = false;
  bool spatial_beta = false;
  double integration_time = 1.0 / 30.0;
  double interval = 1.0;
};

struct OptionRefs {
  CLI::Option* target = nullptr;
  CLI::Option* in_dir = nullptr;
  CLI::Option* out_dir = nullptr;
  CLI::Option* frames = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* algorithm = nullptr;
  CLI::Option* pairing = nullptr;
  CLI::Option* normalize = nullptr;
  CLI::Option* sweep = nullptr;
  CLI::Option* seeds = nullptr;
  CLI::Option* require_conditions = nullptr;
  CLI::Option* epsilon = nullptr;
  CLI::Option* target_scale = nullptr;
  CLI::Option* beta0 = nullptr;
  CLI::Option* beta_sigma = nullptr;
  CLI::Option* distance = nullptr;
  CLI::Option* ambient_mean = nullptr;
  CLI::Option* ambient_sigma = nullptr;
  CLI::Option* k_factor = nullptr;
  CLI::Option* no_shot_noise = nullptr;
  CLI::Option* spatial_beta = nullptr;
  CLI::Option* integration_time = nullptr;
  CLI::Option* interval = nullptr;
};

void add_io_flags(CLI::App* cmd, CommonOpts& o, OptionRefs& r,
                  bool with_target, bool with_in, bool with_out) {
  cmd->add_option("--config", o.config_path,
                  "JSON run configuration; explicit flags override it");
  if (with_target) {
    r.target = cmd->add_option("--target", o.target,
                               "Clean target image (PGM/PPM); omit for the "
                               "built-in 64x64 letter G");
  }
  if (with_in) {
    r.in_dir = cmd->add_option("--in", o.in_dir,
                               "Sequence directory (frames + sequence.json)");
  }
  if (with_out) {
    r.out_dir = cmd->add_option("--out", o.out_dir, "Output directory");
  }
}

void add_fog_flags(CLI::App* cmd, CommonOpts& o, OptionRefs& r) {
  r.frames = cmd->add_option("--frames", o.frames,
                             "Number of measurement events to simulate");
  r.seed = cmd->add_option("--seed", o.seed, "RNG seed");
  r.beta0 = cmd->add_option("--beta0", o.beta0,
                            "Mean scattering coefficient (1/m)");
  r.beta_sigma = cmd->add_option("--beta-sigma", o.beta_sigma,
                                 "Relative std of the per-event beta draw");
  r.distance = cmd->add_option("--distance", o.distance, "Optical path (m)");
  r.ambient_mean = cmd->add_option("--ambient-mean", o.ambient_mean,
                                   "Ambient source intensity (photons)");
  r.ambient_sigma =
      cmd->add_option("--ambient-sigma", o.ambient_sigma,
                      "Relative per-pixel ambient fluctuation");
  r.k_factor = cmd->add_option("--k-factor", o.k_factor,
                               "Airlight coupling factor");
  r.no_shot_noise = cmd->add_flag("--no-shot-noise", o.no_shot_noise,
                                  "Disable Poisson photon noise");
  r.spatial_beta = cmd->add_flag("--spatial-beta", o.spatial_beta,
                                 "Per-pixel instead of per-frame beta draws");
  r.integration_time = cmd->add_option("--integration-time", o.integration_time,
                                       "Exposure of one event (s)");
  r.interval = cmd->add_option("--interval", o.interval,
                               "Spacing between adjacent events (s)");
  r.target_scale = cmd->add_option("--target-scale", o.target_scale,
                                   "Photon budget of a full-scale pixel");
}

void add_recon_flags(CLI::App* cmd, CommonOpts& o, OptionRefs& r,
                     bool with_algorithm) {
  if (with_algorithm) {
    r.algorithm = cmd->add_option("--algorithm", o.algorithm,
                                  "Reconstruction algorithm")
                      ->check(CLI::IsMember({"mean", "pnc", "pnfc"}));
  }
  r.pairing = cmd->add_option("--pairing", o.pairing, "Frame pairing strategy")
                  ->check(CLI::IsMember({"disjoint", "sliding"}));
  r.normalize = cmd->add_option("--normalize", o.normalize,
                                "Display normalization")
                    ->check(CLI::IsMember({"none", "minmax", "sqrt-minmax"}));
}

void add_condition_flags(CLI::App* cmd, CommonOpts& o, OptionRefs& r) {
  r.require_conditions =
      cmd->add_flag("--require-conditions", o.require_conditions,
                    "Exit 2 when a usability condition is violated");
  r.epsilon = cmd->add_option("--epsilon", o.epsilon,
                              "Relative-std threshold for condition (i)");
}

bool passed(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

defog::RunConfig resolve_config(const CommonOpts& o, const OptionRefs& r) {
  defog::RunConfig config;
  if (!o.config_path.empty()) {
    config = defog::run_config_from_json(
        defog::read_binary_file(o.config_path));
  }
  if (passed(r.target)) config.target_path = o.target;
  if (passed(r.in_dir)) config.input_dir = o.in_dir;
  if (passed(r.out_dir)) config.out_dir = o.out_dir;
  if (passed(r.frames)) config.fog.n_frames = o.frames;
  if (passed(r.seed)) config.fog.seed = o.seed;
  if (passed(r.beta0)) config.fog.beta0 = o.beta0;
  if (passed(r.beta_sigma)) config.fog.beta_sigma = o.beta_sigma;
  if (passed(r.distance)) config.fog.d = o.distance;
  if (passed(r.ambient_mean)) config.fog.ambient_mean = o.ambient_mean;
  if (passed(r.ambient_sigma)) config.fog.ambient_sigma = o.ambient_sigma;
  if (passed(r.k_factor)) config.fog.k_factor = o.k_factor;
  if (passed(r.no_shot_noise)) config.fog.shot_noise = !o.no_shot_noise;
  if (passed(r.spatial_beta)) config.fog.spatial_beta = o.spatial_beta;
  if (passed(r.integration_time)) {
    config.fog.integration_time_s = o.integration_time;
  }
  if (passed(r.interval)) config.fog.interval_s = o.interval;
  if (passed(r.target_scale)) config.target_scale = o.target_scale;
  if (passed(r.algorithm)) {
    config.recon.algorithm = defog::parse_algorithm(o.algorithm);
  }
  if (passed(r.pairing)) config.recon.pairing = defog::parse_pairing(o.pairing);
  if (passed(r.normalize)) {
    config.recon.normalization = defog::parse_normalization(o.normalize);
  }
  if (passed(r.sweep)) config.sweep = o.sweep;
  if (passed(r.seeds)) config.seeds = o.seeds;
  if (passed(r.require_conditions)) {
    config.require_conditions = o.require_conditions;
  }
  if (passed(r.epsilon)) config.condition_epsilon = o.epsilon;
  return config;
}

void print_conditions(const defog::ConditionReport& c) {
  std::printf("condition (i)  photon-number fluctuation: %s "
              "(relative std %.6g, threshold %.6g)\n",
              c.condition_i_holds ? "holds" : "VIOLATED",
              c.mean_frame_deviation, c.epsilon);
  std::printf("condition (ii) interval exceeds coherence time: %s\n",
              c.condition_ii_holds ? "holds" : "VIOLATED");
  std::printf("residual lag-1 autocorrelation: %.6g\n", c.ambient_autocorr);
}

int conditions_exit(const defog::RunConfig& config,
                    const defog::ConditionReport& c) {
  if (config.require_conditions &&
      !(c.condition_i_holds && c.condition_ii_holds)) {
    std::fprintf(stderr, "error: usability conditions violated\n");
    return kExitConditions;
  }
  return kExitOk;
}

int cmd_simulate(const CommonOpts& o, const OptionRefs& r) {
  const defog::RunConfig config = resolve_config(o, r);
  const defog::SimulateOutcome outcome = defog::run_simulate(config);
  std::printf("wrote %d frames to %s\n", config.fog.n_frames,
              outcome.sequence_dir.string().c_str());
  print_conditions(outcome.conditions);
  return conditions_exit(config, outcome.conditions);
}

int cmd_defog(const CommonOpts& o, const OptionRefs& r) {
  const defog::RunConfig config = resolve_config(o, r);
  const defog::DefogOutcome outcome = defog::run_defog(config);
  const char* ext = outcome.result.image.channels == 3 ? "ppm" : "pgm";
  std::printf("%s reconstruction (%d pairs) -> %s/recon.%s\n",
              defog::to_string(config.recon.algorithm), outcome.result.n_pairs,
              config.out_dir.c_str(), ext);
  print_conditions(outcome.conditions);
  return conditions_exit(config, outcome.conditions);
}

int cmd_metrics(const std::string& candidate_path,
                const std::string& reference_path,
                const std::string& out_path) {
  const defog::Frame candidate = defog::load_pnm(candidate_path);
  const defog::Frame reference = defog::load_pnm(reference_path);
  defog::ReportRow row;
  row.algorithm = "file";
  row.metrics = defog::compare(candidate, reference);
  const std::string csv = defog::write_csv_report({row});
  if (out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    defog::write_binary_file(out_path, csv);
  }
  return kExitOk;
}

int cmd_pipeline(const CommonOpts& o, const OptionRefs& r) {
  const defog::RunConfig config = resolve_config(o, r);
  const defog::PipelineOutcome outcome = defog::run_pipeline(config);
  std::printf("wrote %zu rows to %s/report.csv\n", outcome.rows.size(),
              config.out_dir.c_str());
  bool closed_form_failed = false;
  bool conditions_violated = false;
  for (const defog::ReportRow& row : outcome.rows) {
    if (row.status == "closed-form-fail") closed_form_failed = true;
    if (row.status == "conditions-violated") conditions_violated = true;
  }
  if (closed_form_failed) {
    std::fprintf(stderr, "error: closed-form check failed in a sweep cell\n");
    return kExitError;
  }
  if (conditions_violated) {
    std::fprintf(stderr, "error: usability conditions violated\n");
    return kExitConditions;
  }
  return kExitOk;
}

int cmd_conditions(const CommonOpts& o, const OptionRefs& r) {
  const defog::RunConfig config = resolve_config(o, r);
  if (config.input_dir.empty()) {
    throw defog::Error(defog::ErrorKind::InvalidArgument,
                       "conditions needs --in <sequence-dir>");
  }
  const defog::LoadedSequence loaded =
      defog::read_sequence_dir(config.input_dir);
  const defog::ConditionReport report =
      defog::check_conditions(loaded.sequence, config.condition_epsilon);
  print_conditions(report);
  return conditions_exit(config, report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-variant fog simulation and correlation defogging"};
  app.set_version_flag("--version", defog::kVersion);
  app.require_subcommand(1);

  CommonOpts sim_o, fog_o, pipe_o, cond_o;
  OptionRefs sim_r, fog_r, pipe_r, cond_r;
  std::string metrics_candidate, metrics_reference, metrics_out;

  CLI::App* sim = app.add_subcommand(
      "simulate", "Render a foggy measurement sequence from a target");
  add_io_flags(sim, sim_o, sim_r, true, false, true);
  add_fog_flags(sim, sim_o, sim_r);
  add_condition_flags(sim, sim_o, sim_r);

  CLI::App* rec = app.add_subcommand(
      "defog", "Reconstruct a target from a measurement sequence");
  add_io_flags(rec, fog_o, fog_r, false, true, true);
  add_recon_flags(rec, fog_o, fog_r, true);
  add_condition_flags(rec, fog_o, fog_r);

  CLI::App* met = app.add_subcommand(
      "metrics", "Score a candidate image against a reference");
  met->add_option("candidate", metrics_candidate, "Candidate image (PGM/PPM)")
      ->required();
  met->add_option("reference", metrics_reference, "Reference image (PGM/PPM)")
      ->required();
  met->add_option("--out", metrics_out, "Write the CSV here instead of stdout");

  CLI::App* pipe = app.add_subcommand(
      "pipeline", "Sweep measurement counts and seeds, score both estimators");
  add_io_flags(pipe, pipe_o, pipe_r, true, false, true);
  add_fog_flags(pipe, pipe_o, pipe_r);
  add_recon_flags(pipe, pipe_o, pipe_r, false);
  add_condition_flags(pipe, pipe_o, pipe_r);
  pipe_r.sweep = pipe->add_option("--sweep", pipe_o.sweep,
                                  "Measurement counts, comma separated")
                     ->delimiter(',');
  pipe_r.seeds =
      pipe->add_option("--seeds", pipe_o.seeds, "Seeds, comma separated")
          ->delimiter(',');

  CLI::App* cond = app.add_subcommand(
      "conditions", "Evaluate the usability conditions of a sequence");
  add_io_flags(cond, cond_o, cond_r, false, true, false);
  add_condition_flags(cond, cond_o, cond_r);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (app.got_subcommand(sim)) return cmd_simulate(sim_o, sim_r);
    if (app.got_subcommand(rec)) return cmd_defog(fog_o, fog_r);
    if (app.got_subcommand(met)) {
      return cmd_metrics(metrics_candidate, metrics_reference, metrics_out);
    }
    if (app.got_subcommand(pipe)) return cmd_pipeline(pipe_o, pipe_r);
    if (app.got_subcommand(cond)) return cmd_conditions(cond_o, cond_r);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
