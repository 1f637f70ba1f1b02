#include <benchmark/benchmark.h>

#include "gk/geometry.hpp"
#include "gk/identities.hpp"
#include "gk/models.hpp"
#include "gk/sampling.hpp"

namespace {

void BM_LocalGeometry(benchmark::State& state) {
  const auto model = gk::build_example_2_2(static_cast<int>(state.range(0)), 3);
  const auto points = gk::sample_points(model.dim(), 1, 7);
  for (auto _ : state) benchmark::DoNotOptimize(gk::LocalGeometry(model, points[0], gk::Depth::full));
}
BENCHMARK(BM_LocalGeometry)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_IdentitySuite(benchmark::State& state) {
  const auto model = gk::build_example_2_2(3, 3);
  const auto points = gk::sample_points(model.dim(), static_cast<int>(state.range(0)), 42);
  gk::SuiteOptions options;
  options.seed = 42;
  options.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(gk::run_checks(model, points, options));
}
BENCHMARK(BM_IdentitySuite)->Arg(5)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace
