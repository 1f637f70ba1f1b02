#include <vector>

#include <benchmark/benchmark.h>

#include "gk/field.hpp"
#include "gk/jet.hpp"

namespace {

void BM_JetProduct(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const gk::Jet3 a = exp(gk::Jet3::variable(dim, 3, 0, 0.3));
  const gk::Jet3 b = exp(gk::Jet3::variable(dim, 3, dim - 1, -0.2));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetProduct)->Arg(3)->Arg(7)->Arg(11);

void BM_FieldJetEval(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::vector<int> zs;
  for (int a = 0; a < dim; ++a) zs.push_back(a);
  const gk::Field f = exp(-2.0 * gk::coordinate_sum(zs)) * sin(gk::Field::coordinate(0));
  std::vector<double> p(static_cast<std::size_t>(dim), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(jet_eval(f, p, 3));
}
BENCHMARK(BM_FieldJetEval)->Arg(3)->Arg(7)->Arg(11);

}  // namespace
