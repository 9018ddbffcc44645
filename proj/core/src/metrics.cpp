#include "defog/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace defog {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;
constexpr double kL = 1.0;

void require_same_shape(const Frame& a, const Frame& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorKind::ShapeMismatch,
                "metric inputs differ in shape");
  }
  if (a.pixels.empty()) {
    throw Error(ErrorKind::EmptyInput, "metric input is empty");
  }
}

void require_unit_range(const Frame& f, const char* which) {
  for (double v : f.pixels) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::RangeError,
                  std::string(which) + " image has a sample outside [0, 1]: " +
                      std::to_string(v));
    }
  }
}

std::vector<double> gaussian_taps() {
  std::vector<double> taps(kWindow);
  const int half = kWindow / 2;
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double x = static_cast<double>(i - half);
    taps[i] = std::exp(-(x * x) / (2.0 * kSigma * kSigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Valid-mode separable Gaussian filter of a single-channel plane.
// Input w x h, output (w - kWindow + 1) x (h - kWindow + 1).
std::vector<double> filter_plane(const std::vector<double>& plane, int w,
                                 int h, const std::vector<double>& taps) {
  const int ow = w - kWindow + 1;
  const int oh = h - kWindow + 1;
  std::vector<double> horiz(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        acc += taps[k] * plane[static_cast<std::size_t>(y) * w + x + k];
      }
      horiz[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        acc += taps[k] * horiz[static_cast<std::size_t>(y + k) * ow + x];
      }
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

double ssim_plane(const std::vector<double>& a, const std::vector<double>& b,
                  int w, int h) {
  const std::vector<double> taps = gaussian_taps();
  std::vector<double> a2(a.size()), b2(a.size()), ab(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a2[i] = a[i] * a[i];
    b2[i] = b[i] * b[i];
    ab[i] = a[i] * b[i];
  }
  const std::vector<double> mu_a = filter_plane(a, w, h, taps);
  const std::vector<double> mu_b = filter_plane(b, w, h, taps);
  const std::vector<double> e_a2 = filter_plane(a2, w, h, taps);
  const std::vector<double> e_b2 = filter_plane(b2, w, h, taps);
  const std::vector<double> e_ab = filter_plane(ab, w, h, taps);

  constexpr double c1 = (kK1 * kL) * (kK1 * kL);
  constexpr double c2 = (kK2 * kL) * (kK2 * kL);
  double sum = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i];
    const double mb = mu_b[i];
    const double va = e_a2[i] - ma * ma;
    const double vb = e_b2[i] - mb * mb;
    const double cov = e_ab[i] - ma * mb;
    sum += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
           ((ma * ma + mb * mb + c1) * (va + vb + c2));
  }
  return sum / static_cast<double>(mu_a.size());
}

std::vector<double> extract_plane(const Frame& f, int channel) {
  std::vector<double> plane(static_cast<std::size_t>(f.width) * f.height);
  for (std::size_t p = 0; p < plane.size(); ++p) {
    plane[p] = f.pixels[p * f.channels + channel];
  }
  return plane;
}

}  // namespace

double mse(const Frame& a, const Frame& b) {
  require_same_shape(a, b);
  require_unit_range(a, "first");
  require_unit_range(b, "second");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = a.pixels[i] - b.pixels[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.pixels.size());
}

double psnr(const Frame& a, const Frame& b, double peak) {
  if (!(peak > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "psnr peak must be > 0");
  }
  const double err = mse(a, b);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / err);
}

double ssim(const Frame& a, const Frame& b) {
  require_same_shape(a, b);
  require_unit_range(a, "first");
  require_unit_range(b, "second");
  if (a.width < kWindow || a.height < kWindow) {
    throw Error(ErrorKind::TooSmall,
                "ssim needs at least " + std::to_string(kWindow) + "x" +
                    std::to_string(kWindow) + " images, got " +
                    std::to_string(a.width) + "x" + std::to_string(a.height));
  }
  double sum = 0.0;
  for (int c = 0; c < a.channels; ++c) {
    sum += ssim_plane(extract_plane(a, c), extract_plane(b, c), a.width,
                      a.height);
  }
  return sum / static_cast<double>(a.channels);
}

BrightnessContrast brightness_contrast(const Frame& a) {
  if (a.pixels.empty()) {
    throw Error(ErrorKind::EmptyInput, "brightness_contrast input is empty");
  }
  BrightnessContrast bc;
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : a.pixels) {
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bc.mean = sum / static_cast<double>(a.pixels.size());
  bc.michelson_contrast = (hi + lo) > 0.0 ? (hi - lo) / (hi + lo) : 0.0;
  return bc;
}

MetricsReport compare(const Frame& candidate, const Frame& reference) {
  MetricsReport report;
  report.mse = mse(candidate, reference);
  report.psnr_db = psnr(candidate, reference);
  report.ssim = ssim(candidate, reference);
  const BrightnessContrast cand = brightness_contrast(candidate);
  const BrightnessContrast ref = brightness_contrast(reference);
  report.mean_brightness_candidate = cand.mean;
  report.mean_brightness_reference = ref.mean;
  report.contrast_candidate = cand.michelson_contrast;
  return report;
}

}  // namespace defog
