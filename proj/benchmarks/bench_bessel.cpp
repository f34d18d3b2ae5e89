#include <benchmark/benchmark.h>

#include "rodlif/bessel.hpp"

static void BM_BesselK_Series(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rodlif::bessel_k(0, x));
    benchmark::DoNotOptimize(rodlif::bessel_k(1, x));
    x = x < 1.9 ? x * 1.01 : 0.01;
  }
}
BENCHMARK(BM_BesselK_Series);

static void BM_BesselK_ContinuedFraction(benchmark::State& state) {
  double x = 2.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rodlif::bessel_k(0, x));
    benchmark::DoNotOptimize(rodlif::bessel_k(1, x));
    x = x < 500.0 ? x * 1.01 : 2.5;
  }
}
BENCHMARK(BM_BesselK_ContinuedFraction);

static void BM_BesselK2(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rodlif::bessel_k(2, x));
    x = x < 60.0 ? x * 1.02 : 0.1;
  }
}
BENCHMARK(BM_BesselK2);
