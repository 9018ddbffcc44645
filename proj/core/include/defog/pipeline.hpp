#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "defog/csv.hpp"
#include "defog/fogsim.hpp"
#include "defog/recon.hpp"
#include "defog/types.hpp"

namespace defog {

/// Resolved configuration of one CLI run. Flat field names mirror the JSON
/// keys one-to-one, so a run.json written by any run can be fed back as
/// --config and reproduces the outputs byte for byte.
struct RunConfig {
  std::string target_path;
  std::string input_dir;
  std::string out_dir;
  FogParams fog;
  ReconConfig recon;
  /// Photon budget: target pixels in [0,1] are multiplied by this before
  /// simulation (the exposure-time scaling).
  double target_scale = 10000.0;
  /// Measurement counts for the sweep: frames simulated per cell. Each
  /// count must be >= 2 so at least one correlation pair exists.
  std::vector<int> sweep;
  std::vector<std::uint64_t> seeds = {1};
  bool require_conditions = false;
  double condition_epsilon = 1e-3;
};

std::string run_config_to_json(const RunConfig& config,
                               const std::string& subcommand);
RunConfig run_config_from_json(const std::string& json_text);

/// Worker cap for sweep parallelism: DEFOG_THREADS when set and nonzero,
/// otherwise the hardware concurrency.
int resolve_thread_count();

struct SimulateOutcome {
  ConditionReport conditions;
  std::filesystem::path sequence_dir;
};

/// Simulates per config and writes the frame files, sequence.json and
/// run.json under config.out_dir.
SimulateOutcome run_simulate(const RunConfig& config);

struct DefogOutcome {
  ReconResult result;
  ConditionReport conditions;
};

/// Loads config.input_dir, reconstructs per config.recon, writes the
/// normalized image, the raw correlation image and a result.json sidecar.
DefogOutcome run_defog(const RunConfig& config);

struct PipelineOutcome {
  std::vector<ReportRow> rows;
  std::string csv_text;
  bool all_ok = true;
};

/// For every (measurement count, seed) sweep cell: simulate that many
/// frames, reconstruct with both correlation algorithms, score each against
/// the clean target, and write one CSV plus the per-cell images. On a cell
/// whose frames are all identical, the closed-form identities
/// (pnc raw = p1*p2, pnfc raw = 4*p1*p2) are verified and the row status
/// reports the outcome. Rows are sorted by (algorithm, frames, seed), so
/// output does not depend on scheduling.
PipelineOutcome run_pipeline(const RunConfig& config);

}  // namespace defog
