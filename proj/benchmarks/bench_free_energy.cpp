#include <benchmark/benchmark.h>

#include <memory>

#include "rodlif/free_energy.hpp"
#include "rodlif/material_card.hpp"

namespace {

std::string card(const char* name) {
  return std::string(RODLIF_DATA_DIR) + "/materials/" + name;
}

rodlif::RodSystem shipped() {
  rodlif::RodSystem s;
  s.radius_a = 1e-9;
  s.radius_b = 1e-9;
  s.rod_a = std::make_shared<rodlif::DielectricModel>(
      rodlif::load_material_card(card("silica.card")));
  s.rod_b = std::make_shared<rodlif::DielectricModel>(
      rodlif::load_material_card(card("zinc_oxide.card")));
  s.medium = std::make_shared<rodlif::DielectricModel>(
      rodlif::load_material_card(card("bromobenzene.card")));
  return s;
}

}  // namespace

static void BM_GTerm(benchmark::State& state) {
  const auto s = shipped();
  const rodlif::ThermalEnvironment env(300.0);
  const rodlif::IntegrationSettings set;
  int n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rodlif::g_term(s, env, n, 1e-7, rodlif::SummationMode::retarded, set));
    n = n < 64 ? n + 1 : 1;
  }
}
BENCHMARK(BM_GTerm);

static void BM_FreeEnergy_Retarded_100nm(benchmark::State& state) {
  const auto s = shipped();
  const rodlif::ThermalEnvironment env(300.0);
  rodlif::IntegrationSettings set;
  set.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rodlif::free_energy(s, env, 1e-7, rodlif::SummationMode::retarded, set));
  }
}
BENCHMARK(BM_FreeEnergy_Retarded_100nm)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
