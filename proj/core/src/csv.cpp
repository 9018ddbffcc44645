#include "defog/csv.hpp"

#include <cmath>
#include <cstdio>

namespace defog {

std::string format_csv_double(double value) {
  if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string write_csv_report(const std::vector<ReportRow>& rows) {
  std::string out =
      "algorithm,n_pairs,n_frames,seed,pairing,normalization,"
      "ssim,psnr_db,mse,mean_brightness,reference_brightness,contrast,status\n";
  for (const ReportRow& row : rows) {
    out += row.algorithm;
    out += ',';
    out += std::to_string(row.n_pairs);
    out += ',';
    out += std::to_string(row.n_frames);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += row.pairing;
    out += ',';
    out += row.normalization;
    out += ',';
    out += format_csv_double(row.metrics.ssim);
    out += ',';
    out += format_csv_double(row.metrics.psnr_db);
    out += ',';
    out += format_csv_double(row.metrics.mse);
    out += ',';
    out += format_csv_double(row.metrics.mean_brightness_candidate);
    out += ',';
    out += format_csv_double(row.metrics.mean_brightness_reference);
    out += ',';
    out += format_csv_double(row.metrics.contrast_candidate);
    out += ',';
    out += row.status;
    out += '\n';
  }
  return out;
}

}  // namespace defog
