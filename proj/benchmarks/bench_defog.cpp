// Microbenchmarks for the hot paths: frame simulation, the two correlation
// estimators, SSIM scoring, RNG sampling and the PNM codec.
//
//   cmake --build build && ./build/benchmarks/defog_bench

#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>

#include "defog/fogsim.hpp"
#include "defog/metrics.hpp"
#include "defog/pnm.hpp"
#include "defog/recon.hpp"
#include "defog/rng.hpp"
#include "defog/targets.hpp"

namespace {

defog::Frame bench_target() {
  defog::Frame target = defog::make_letter_g(64);
  for (double& v : target.pixels) v *= 10000.0;
  return target;
}

defog::FogParams bench_fog(int n_frames) {
  defog::FogParams fog;
  fog.ambient_mean = 8000.0;
  fog.n_frames = n_frames;
  return fog;
}

defog::FrameSequence bench_sequence(int n_frames) {
  return defog::simulate_sequence(bench_target(), bench_fog(n_frames));
}

void BM_RenderFrame(benchmark::State& state) {
  const defog::Frame target = bench_target();
  const defog::FogParams fog = bench_fog(2);
  int frame = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(defog::render_frame(target, fog, frame++));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(target.pixels.size()));
}
BENCHMARK(BM_RenderFrame);

void BM_SimulateSequence(benchmark::State& state) {
  const defog::Frame target = bench_target();
  const defog::FogParams fog = bench_fog(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(defog::simulate_sequence(target, fog));
  }
}
BENCHMARK(BM_SimulateSequence)->Arg(20)->Arg(100);

void BM_PncReconstruct(benchmark::State& state) {
  const defog::FrameSequence seq =
      bench_sequence(static_cast<int>(state.range(0)));
  const defog::PairSet pairs = defog::make_pairs(
      static_cast<int>(seq.frames.size()), defog::Pairing::DisjointAdjacent);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        defog::pnc_reconstruct(seq, pairs, defog::Normalization::SqrtMinmax));
  }
}
BENCHMARK(BM_PncReconstruct)->Arg(20)->Arg(300);

void BM_PnfcReconstruct(benchmark::State& state) {
  const defog::FrameSequence seq =
      bench_sequence(static_cast<int>(state.range(0)));
  const defog::PairSet pairs = defog::make_pairs(
      static_cast<int>(seq.frames.size()), defog::Pairing::DisjointAdjacent);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        defog::pnfc_reconstruct(seq, pairs, defog::Normalization::SqrtMinmax));
  }
}
BENCHMARK(BM_PnfcReconstruct)->Arg(20)->Arg(300);

void BM_Ssim(benchmark::State& state) {
  const defog::Frame a = defog::make_letter_g(64);
  const defog::Frame b = defog::make_color_gradient(64);
  defog::Frame b_gray = defog::Frame::zeros(64, 64, 1);
  for (std::size_t i = 0; i < b_gray.pixels.size(); ++i) {
    b_gray.pixels[i] = b.pixels[i * 3];
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(defog::ssim(a, b_gray));
  }
}
BENCHMARK(BM_Ssim);

void BM_PoissonSample(benchmark::State& state) {
  const double mean = static_cast<double>(state.range(0));
  defog::SubstreamRng rng(1, 7, 0, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(defog::sample_poisson(rng, mean));
  }
}
BENCHMARK(BM_PoissonSample)->Arg(5)->Arg(50)->Arg(5000);

void BM_PnmCodec(benchmark::State& state) {
  const defog::Frame frame =
      defog::normalize_display(bench_sequence(2).frames.front(),
                               defog::Normalization::Minmax);
  for (auto _ : state) {
    const std::string bytes =
        defog::write_pnm(frame, defog::PnmFormat::P5, 65535);
    benchmark::DoNotOptimize(defog::read_pnm(bytes));
  }
}
BENCHMARK(BM_PnmCodec);

}  // namespace

BENCHMARK_MAIN();
