#include <benchmark/benchmark.h>

#include "pflow/warped_metric.hpp"

static void BM_BallVolume(benchmark::State& state) {
  const auto m = pflow::metrics::WarpedMetric::space_form(1.0, 4.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.ball_volume(3.0));
  }
}
BENCHMARK(BM_BallVolume);

BENCHMARK_MAIN();
