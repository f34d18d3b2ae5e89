#include <benchmark/benchmark.h>

#include <memory>

#include "rodlif/kernel.hpp"

namespace {

rodlif::RodSystem make_system() {
  rodlif::RodSystem s;
  s.radius_a = 1e-9;
  s.radius_b = 1e-9;
  s.rod_a = std::make_shared<rodlif::DielectricModel>(
      rodlif::DielectricModel::from_oscillators("a", {{1.0, 2e16, 0.0}}));
  s.rod_b = std::make_shared<rodlif::DielectricModel>(
      rodlif::DielectricModel::from_oscillators("b", {{3.0, 1e16, 0.0}}));
  s.medium = std::make_shared<rodlif::DielectricModel>(
      rodlif::DielectricModel::from_oscillators("m", {{2.0, 1.5e16, 0.0}}));
  return s;
}

}  // namespace

static void BM_KernelG_Retarded(benchmark::State& state) {
  const auto s = make_system();
  double u = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rodlif::kernel_G(s, 1e15, u / 1e-8, 1e-8, rodlif::KernelMode::retarded));
    u = u < 50.0 ? u * 1.03 : 1e-3;
  }
}
BENCHMARK(BM_KernelG_Retarded);

static void BM_KernelG_Nonretarded(benchmark::State& state) {
  const auto s = make_system();
  double u = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rodlif::kernel_G(s, 1e15, u / 1e-8, 1e-8, rodlif::KernelMode::nonretarded));
    u = u < 50.0 ? u * 1.03 : 1e-3;
  }
}
BENCHMARK(BM_KernelG_Nonretarded);
