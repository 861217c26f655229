// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "dirint/beams.hpp"
#include "dirint/energetics.hpp"
#include "dirint/scene.hpp"

namespace {

using namespace dirint;

SceneSpec mixture_scene(std::size_t frames) {
  SceneSpec s;
  s.order = 4;
  s.waves = {{SphericalDirection(0.8, 0.3), 1.0}, {SphericalDirection(2.0, -1.0), 0.5}};
  s.diffuse_psd = 1.0;
  s.frames = frames;
  s.seed = 1;
  return s;
}

const Beam& bench_beam() {
  static const Beam beam =
      Beam::from_profile(preset_profile(PresetKind::Hypercardioid, 3), SphericalDirection(1.0, 0.5));
  return beam;
}

void BM_Synthesize(benchmark::State& state) {
  const auto spec = mixture_scene(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SynthesizeSerial(benchmark::State& state) {
  const auto spec = mixture_scene(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_serial(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WeightedMoments(benchmark::State& state) {
  const auto set = synthesize(mixture_scene(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(accumulate_weighted_moments(set.frames, bench_beam()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WeightedMomentsSerial(benchmark::State& state) {
  const auto set = synthesize(mixture_scene(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(accumulate_weighted_moments_serial(set.frames, bench_beam()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_StreamingExperiment(benchmark::State& state) {
  const auto spec = mixture_scene(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(experiment_moments(spec, bench_beam()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Synthesize)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SynthesizeSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedMoments)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedMomentsSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StreamingExperiment)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
