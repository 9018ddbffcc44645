#pragma once

#include "defog/types.hpp"

namespace defog {

/// Image-quality summary for one (candidate, reference) pair. psnr_db is
/// +infinity when mse == 0; serialize it as "inf".
struct MetricsReport {
  double ssim = 0.0;
  double psnr_db = 0.0;
  double mse = 0.0;
  double mean_brightness_candidate = 0.0;
  double mean_brightness_reference = 0.0;
  double contrast_candidate = 0.0;
};

struct BrightnessContrast {
  double mean = 0.0;
  double michelson_contrast = 0.0;
};

/// Mean squared pixel difference over all samples. Inputs must share shape
/// and lie in [0,1] (RangeError otherwise).
double mse(const Frame& a, const Frame& b);

/// 10*log10(peak^2 / mse); +infinity for identical images.
double psnr(const Frame& a, const Frame& b, double peak = 1.0);

/// Structural similarity with the canonical parameters: 11x11 Gaussian
/// window (sigma 1.5), K1 = 0.01, K2 = 0.03, dynamic range 1, averaged over
/// all fully interior window positions. Multi-channel images score the
/// unweighted average of per-channel values. Throws TooSmall if either
/// dimension is below the window size.
double ssim(const Frame& a, const Frame& b);

/// Mean pixel value and Michelson contrast (max-min)/(max+min); the
/// contrast of an all-zero frame is defined as 0.
BrightnessContrast brightness_contrast(const Frame& a);

/// Computes all metrics of one candidate against a reference.
MetricsReport compare(const Frame& candidate, const Frame& reference);

}  // namespace defog
