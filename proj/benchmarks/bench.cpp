#include <benchmark/benchmark.h>

#include <cmath>

#include "dptk/corpus.hpp"
#include "dptk/maximal.hpp"
#include "dptk/potentials.hpp"
#include "dptk/whitney.hpp"

using namespace dptk;

namespace {

GridFunction bump(int cells) {
  const auto g = GridGeometry::cube(2, cells, -1.0, 1.0);
  return sample(g, [](const Point& x) { return std::exp(-4.0 * (x[0] * x[0] + x[1] * x[1])); });
}

void BM_Maximal(benchmark::State& state) {
  const auto f = bump(static_cast<int>(state.range(0)));
  const MaximalSpec spec{0.0, MaximalMode::centered, std::nullopt, 1};
  for (auto _ : state) benchmark::DoNotOptimize(maximal_function(f, spec));
}
BENCHMARK(BM_Maximal)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Riesz(benchmark::State& state) {
  const auto f = bump(static_cast<int>(state.range(0)));
  const auto ball = Region::ball({}, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(riesz_potential(f, 1.0, ball));
}
BENCHMARK(BM_Riesz)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_WhitneyCover(benchmark::State& state) {
  const auto g = GridGeometry::cube(2, static_cast<int>(state.range(0)), -1.0, 1.0);
  const auto mask = random_mask(g, kCorpusSeed, 4);
  for (auto _ : state) benchmark::DoNotOptimize(cover(g, mask, 0.5));
}
BENCHMARK(BM_WhitneyCover)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
