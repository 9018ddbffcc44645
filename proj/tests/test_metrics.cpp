#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "defog/metrics.hpp"
#include "defog/targets.hpp"
#include "oracles.hpp"

using namespace defog;

namespace {

Frame random_unit_frame(std::mt19937_64& rng, int w, int h, int c = 1) {
  Frame f = Frame::zeros(w, h, c);
  f.pixels = oracle::random_image(rng, f.pixels.size(), 0.0, 1.0);
  return f;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("mse closed forms") {
  const Frame a = Frame::filled(4, 4, 1, 0.25);
  CHECK(mse(a, a) == 0.0);
  CHECK(mse(Frame::zeros(3, 3, 1), Frame::filled(3, 3, 1, 1.0)) == 1.0);
}

TEST_CASE("mse matches the scalar oracle") {
  std::mt19937_64 rng(21);
  const Frame a = random_unit_frame(rng, 6, 5);
  const Frame b = random_unit_frame(rng, 6, 5);
  CHECK(std::fabs(mse(a, b) - oracle::mse(a.pixels, b.pixels)) < 1e-15);
}

TEST_CASE("mse input validation") {
  auto expect_kind = [](const Frame& a, const Frame& b, ErrorKind want) {
    try {
      mse(a, b);
      FAIL("expected an Error");
    } catch (const Error& e) {
      CHECK(e.kind() == want);
    }
  };
  expect_kind(Frame::zeros(2, 2, 1), Frame::zeros(3, 2, 1),
              ErrorKind::ShapeMismatch);
  expect_kind(Frame::filled(2, 2, 1, 1.5), Frame::zeros(2, 2, 1),
              ErrorKind::RangeError);
  expect_kind(Frame::filled(2, 2, 1, -0.1), Frame::zeros(2, 2, 1),
              ErrorKind::RangeError);
}

TEST_CASE("psnr closed forms") {
  const Frame a = Frame::filled(4, 4, 1, 0.5);
  CHECK(std::isinf(psnr(a, a)));
  CHECK(psnr(a, a) > 0.0);

  // mse 0.01 -> 20 dB exactly.
  Frame b = a;
  for (double& v : b.pixels) v += 0.1;
  CHECK(psnr(a, b) == doctest::Approx(20.0).epsilon(1e-12));

  // mse 0.25 -> about 6.0206 dB.
  Frame c = Frame::filled(4, 4, 1, 0.0);
  Frame d = Frame::filled(4, 4, 1, 0.5);
  CHECK(psnr(c, d) == doctest::Approx(10.0 * std::log10(1.0 / 0.25))
                          .epsilon(1e-12));
  CHECK(psnr(c, d) == doctest::Approx(6.0206).epsilon(1e-4));

  CHECK_THROWS_AS(psnr(a, a, 0.0), Error);
}

TEST_CASE("psnr decreases as noise amplitude grows") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(seed);
    const Frame ref = random_unit_frame(rng, 16, 16);
    double prev = std::numeric_limits<double>::infinity();
    for (double amplitude : {0.02, 0.05, 0.1, 0.2}) {
      Frame noisy = ref;
      std::uniform_real_distribution<double> dist(-amplitude, amplitude);
      for (double& v : noisy.pixels) {
        v = std::clamp(v + dist(rng), 0.0, 1.0);
      }
      const double p = psnr(ref, noisy);
      CHECK(p < prev);
      prev = p;
    }
  }
}

TEST_CASE("ssim identity, symmetry and range") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const Frame a = random_unit_frame(rng, 13, 17);
    const Frame b = random_unit_frame(rng, 13, 17);
    CHECK(ssim(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
    const double s = ssim(a, b);
    CHECK(s >= -1.0);
    CHECK(s <= 1.0);
    CHECK(s < 1.0);
  }
}

TEST_CASE("ssim penalizes a luminance-scaled copy") {
  const Frame a = make_letter_g(32);
  Frame scaled = a;
  for (double& v : scaled.pixels) v *= 0.5;
  CHECK(ssim(a, scaled) < 1.0);
}

TEST_CASE("ssim matches the reference implementation") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 5; ++trial) {
    const Frame a = random_unit_frame(rng, 32, 32);
    const Frame b = random_unit_frame(rng, 32, 32);
    const double want = oracle::ssim_plane(a.pixels, b.pixels, 32, 32);
    CHECK(std::fabs(ssim(a, b) - want) < 1e-9);
  }
  // Structured inputs too, not just noise.
  const Frame g = make_letter_g(32);
  Frame blurred = g;
  for (int y = 1; y + 1 < 32; ++y) {
    for (int x = 1; x + 1 < 32; ++x) {
      blurred.at(x, y) =
          (g.at(x - 1, y) + g.at(x + 1, y) + g.at(x, y - 1) + g.at(x, y + 1) +
           4.0 * g.at(x, y)) /
          8.0;
    }
  }
  const double want = oracle::ssim_plane(g.pixels, blurred.pixels, 32, 32);
  CHECK(std::fabs(ssim(g, blurred) - want) < 1e-9);
}

TEST_CASE("ssim averages channels of a color image") {
  std::mt19937_64 rng(27);
  Frame a = random_unit_frame(rng, 16, 16, 3);
  Frame b = random_unit_frame(rng, 16, 16, 3);
  double want = 0.0;
  for (int c = 0; c < 3; ++c) {
    oracle::Image pa(256), pb(256);
    for (std::size_t p = 0; p < 256; ++p) {
      pa[p] = a.pixels[p * 3 + static_cast<std::size_t>(c)];
      pb[p] = b.pixels[p * 3 + static_cast<std::size_t>(c)];
    }
    want += oracle::ssim_plane(pa, pb, 16, 16);
  }
  want /= 3.0;
  CHECK(std::fabs(ssim(a, b) - want) < 1e-9);
}

TEST_CASE("ssim rejects undersized images") {
  try {
    ssim(Frame::zeros(10, 32, 1), Frame::zeros(10, 32, 1));
    FAIL("expected TooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooSmall);
  }
  CHECK_NOTHROW(ssim(Frame::zeros(11, 11, 1), Frame::zeros(11, 11, 1)));
}

TEST_CASE("brightness_contrast closed forms") {
  const BrightnessContrast flat = brightness_contrast(Frame::filled(4, 4, 1, 0.5));
  CHECK(flat.mean == 0.5);
  CHECK(flat.michelson_contrast == 0.0);

  Frame bw = Frame::zeros(2, 1, 1);
  bw.pixels = {0.0, 1.0};
  const BrightnessContrast full = brightness_contrast(bw);
  CHECK(full.mean == 0.5);
  CHECK(full.michelson_contrast == 1.0);

  const BrightnessContrast dark = brightness_contrast(Frame::zeros(3, 3, 1));
  CHECK(dark.mean == 0.0);
  CHECK(dark.michelson_contrast == 0.0);
}

TEST_CASE("brightness_contrast matches a scalar oracle") {
  std::mt19937_64 rng(29);
  const Frame f = random_unit_frame(rng, 7, 5);
  double sum = 0.0, lo = 1e9, hi = -1e9;
  for (double v : f.pixels) {
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const BrightnessContrast bc = brightness_contrast(f);
  CHECK(bc.mean == doctest::Approx(sum / f.pixels.size()).epsilon(1e-15));
  CHECK(bc.michelson_contrast ==
        doctest::Approx((hi - lo) / (hi + lo)).epsilon(1e-15));
}

TEST_CASE("compare fills every field consistently") {
  std::mt19937_64 rng(31);
  const Frame cand = random_unit_frame(rng, 16, 16);
  const Frame ref = random_unit_frame(rng, 16, 16);
  const MetricsReport r = compare(cand, ref);
  CHECK(r.mse == doctest::Approx(mse(cand, ref)).epsilon(1e-15));
  CHECK(r.psnr_db == doctest::Approx(psnr(cand, ref)).epsilon(1e-12));
  CHECK(r.ssim == doctest::Approx(ssim(cand, ref)).epsilon(1e-12));
  CHECK(r.mean_brightness_candidate ==
        doctest::Approx(brightness_contrast(cand).mean).epsilon(1e-15));
  CHECK(r.mean_brightness_reference ==
        doctest::Approx(brightness_contrast(ref).mean).epsilon(1e-15));
  CHECK(r.contrast_candidate ==
        doctest::Approx(brightness_contrast(cand).michelson_contrast)
            .epsilon(1e-15));

  const MetricsReport self = compare(cand, cand);
  CHECK(self.mse == 0.0);
  CHECK(std::isinf(self.psnr_db));
  CHECK(self.ssim == doctest::Approx(1.0).epsilon(1e-12));
}

}  // TEST_SUITE
