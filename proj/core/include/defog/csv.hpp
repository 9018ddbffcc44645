#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "defog/metrics.hpp"

namespace defog {

/// One CSV result row: run metadata plus the metrics of a single
/// reconstruction. status is "ok" or a short failure note.
struct ReportRow {
  std::string algorithm;
  int n_pairs = 0;
  int n_frames = 0;
  std::uint64_t seed = 0;
  std::string pairing;
  std::string normalization;
  MetricsReport metrics;
  std::string status = "ok";
};

/// Formats with 9 significant digits; infinities become "inf"/"-inf".
std::string format_csv_double(double value);

/// Emits the fixed-order header row followed by one line per report.
/// Output bytes are deterministic for identical inputs.
std::string write_csv_report(const std::vector<ReportRow>& rows);

}  // namespace defog
