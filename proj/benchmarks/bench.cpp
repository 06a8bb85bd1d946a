#include <benchmark/benchmark.h>

#include "smf/mumford.hpp"
#include "smf/series.hpp"
#include "smf/supermatrix.hpp"

#include "../tests/support.hpp"

namespace {

using namespace smf;

void BM_GrassmannMul(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  testing::Rng rng(42);
  GrassmannElement a = testing::random_element(rng, L);
  GrassmannElement b = testing::random_element(rng, L);
  for (auto _ : state) {
    GrassmannElement c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_GrassmannMul)->Arg(2)->Arg(4)->Arg(6);

void BM_Berezinian(benchmark::State& state) {
  testing::Rng rng(43);
  SuperMatrix m = testing::random_even_invertible(
      rng, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 4);
  for (auto _ : state) {
    GrassmannElement b = m.berezinian(BerRoute::via_d);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_Berezinian)->Args({1, 1})->Args({2, 2})->Args({3, 2});

void BM_SeriesDiv(benchmark::State& state) {
  testing::Rng rng(44);
  const int w = static_cast<int>(state.range(0));
  SuperLaurentSeries x = testing::random_series(rng, 2, -2, w);
  SuperLaurentSeries y = testing::random_series(rng, 2, 0, w);
  y.set(0, GrassmannElement::one(2), GrassmannElement::zero(2));
  for (auto _ : state) {
    SuperLaurentSeries q = x / y;
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_SeriesDiv)->Arg(8)->Arg(16);

void BM_MumfordRamond(benchmark::State& state) {
  RamondLocalData d = testing::identity_ramond_fixture(2, 8, 2);
  for (auto _ : state) {
    MumfordResult r = mumford_ramond(d);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_MumfordRamond);

}  // namespace

BENCHMARK_MAIN();
