#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "rodlif/bessel.hpp"
#include "rodlif/free_energy.hpp"
#include "rodlif/material_card.hpp"
#include "support.hpp"

using rodlif::EnergyResult;
using rodlif::IntegrationSettings;
using rodlif::RodSystem;
using rodlif::SummationMode;
using rodlif::ThermalEnvironment;
using rodlif::free_energy;
using rodlif::g_term;

namespace {
#include "oracles/scalar_reference.inc"

const ThermalEnvironment kRoom(300.0);

// closed-form nonretarded g for constant dielectrics:
//   g = -(a^2 b^2 / (2 pi beta R^5)) (e3-e1)(e3-e2) [ M0/(4 e3^2)
//       + M1 (1/(e3+e1) + 1/(e3+e2)) / (2 e3) + (M2+M0)/(2 (e3+e1)(e3+e2)) ]
double nonret_g_closed_form(double e1, double e2, double e3, double a, double b, double R,
                            const ThermalEnvironment& env) {
  const double combo = kBesselMoment0 / (4.0 * e3 * e3) +
                       kBesselMoment1 * (1.0 / (e3 + e1) + 1.0 / (e3 + e2)) / (2.0 * e3) +
                       (kBesselMoment2 + kBesselMoment0) / (2.0 * (e3 + e1) * (e3 + e2));
  return -(a * a * b * b) * (e3 - e1) * (e3 - e2) * combo /
         (2.0 * M_PI * env.beta() * std::pow(R, 5));
}

}  // namespace

TEST_SUITE("free_energy") {

TEST_CASE("index-matched medium gives exactly zero") {
  auto s = testsup::constant_system(3.0, 5.0, 3.0);
  IntegrationSettings set;
  for (SummationMode mode : {SummationMode::retarded, SummationMode::nonretarded,
                             SummationMode::zero_frequency_only}) {
    CHECK(g_term(s, kRoom, 0, 1e-8, mode, set) == 0.0);
    const EnergyResult r = free_energy(s, kRoom, 5e-8, mode, set);
    CHECK(r.F == 0.0);
    CHECK(r.converged);
  }
}

TEST_CASE("all media identical gives zero at every separation") {
  auto s = testsup::constant_system(2.5, 2.5, 2.5);
  for (double R : {5e-9, 8e-8, 2e-6}) {
    CHECK(free_energy(s, kRoom, R, SummationMode::retarded).F == 0.0);
  }
}

TEST_CASE("zero mode is bit-identical between retarded and nonretarded evaluation") {
  auto si = std::make_shared<rodlif::DielectricModel>(
      rodlif::load_material_card(testsup::card("silica.card")));
  auto bb = std::make_shared<rodlif::DielectricModel>(
      rodlif::load_material_card(testsup::card("bromobenzene.card")));
  RodSystem s;
  s.radius_a = 1e-9;
  s.radius_b = 1e-9;
  s.rod_a = si;
  s.rod_b = bb;
  s.medium = testsup::constant_eps(3.0, "medium");
  IntegrationSettings set;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const double R = std::pow(10.0, -8.5 + 3.0 * u(rng));
    const double ret = g_term(s, kRoom, 0, R, SummationMode::retarded, set);
    const double non = g_term(s, kRoom, 0, R, SummationMode::nonretarded, set);
    CHECK(ret == non);
    CHECK(free_energy(s, kRoom, R, SummationMode::zero_frequency_only, set).F == 0.5 * ret);
  }
}

TEST_CASE("toy system n = 0 term matches the high-precision reference") {
  auto s = testsup::constant_system(2.0, 4.0, 3.0);
  IntegrationSettings set;
  const double g0 = g_term(s, kRoom, 0, 1e-8, SummationMode::nonretarded, set);
  CHECK(g0 == doctest::Approx(kToySystemGTermN0).epsilon(2e-9));
  // and against the closed-form moment combination
  CHECK(g0 == doctest::Approx(nonret_g_closed_form(2.0, 4.0, 3.0, 1e-9, 1e-9, 1e-8, kRoom))
                  .epsilon(1e-8));
}

TEST_CASE("every nonretarded term of a constant-dielectric system has the closed form") {
  auto s = testsup::constant_system(1.8, 6.2, 2.9, 0.7e-9, 1.4e-9);
  IntegrationSettings set;
  const double expect = nonret_g_closed_form(1.8, 6.2, 2.9, 0.7e-9, 1.4e-9, 3e-8, kRoom);
  for (int n : {0, 3, 57}) {
    CHECK(g_term(s, kRoom, n, 3e-8, SummationMode::nonretarded, set) ==
          doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("nonretarded power law F(2R)/F(R) = 2^-5 for constant dielectrics") {
  auto s = testsup::constant_system(2.0, 4.0, 3.0);
  IntegrationSettings set;
  set.max_matsubara_n = 40;  // constant models never converge; fixed truncation
  const double R = 1e-8;
  const EnergyResult f1 = free_energy(s, kRoom, R, SummationMode::nonretarded, set);
  const EnergyResult f2 = free_energy(s, kRoom, 2.0 * R, SummationMode::nonretarded, set);
  CHECK_FALSE(f1.converged);  // truncated by the cap, flagged honestly
  CHECK(f2.F / f1.F == doctest::Approx(std::pow(2.0, -5.0)).epsilon(1e-4));
  // zero-frequency column obeys the same law and does converge
  const EnergyResult z1 = free_energy(s, kRoom, R, SummationMode::zero_frequency_only, set);
  const EnergyResult z2 = free_energy(s, kRoom, 2.0 * R, SummationMode::zero_frequency_only, set);
  CHECK(z1.converged);
  CHECK(z2.F / z1.F == doctest::Approx(std::pow(2.0, -5.0)).epsilon(1e-6));
}

TEST_CASE("like rods attract at every sampled separation") {
  auto s = testsup::constant_system(4.0, 4.0, 2.0);
  IntegrationSettings set;
  for (double R : {4e-9, 2e-8, 1e-7, 5e-7, 2e-6}) {
    const EnergyResult r = free_energy(s, kRoom, R, SummationMode::retarded, set);
    CHECK(r.F < 0.0);
    CHECK(r.converged);
  }
}

TEST_CASE("persistent ordering e1 < e3 < e2 gives repulsion") {
  auto s = testsup::constant_system(2.0, 4.0, 3.0);
  for (double R : {5e-9, 1e-7, 1e-6}) {
    CHECK(free_energy(s, kRoom, R, SummationMode::retarded).F > 0.0);
  }
}

TEST_CASE("retarded constant-dielectric energy approaches the zero-frequency term at large R") {
  auto s = testsup::constant_system(4.0, 4.0, 2.0);
  const EnergyResult ret = free_energy(s, kRoom, 1e-5, SummationMode::retarded);
  const EnergyResult zf = free_energy(s, kRoom, 1e-5, SummationMode::zero_frequency_only);
  CHECK(std::fabs(ret.F / zf.F - 1.0) < 0.1);
}

TEST_CASE("R <= 0 is an error, never a silent clamp") {
  auto s = testsup::constant_system(2.0, 4.0, 3.0);
  CHECK_THROWS_AS(free_energy(s, kRoom, 0.0, SummationMode::retarded), std::domain_error);
  CHECK_THROWS_AS(free_energy(s, kRoom, -1e-9, SummationMode::retarded), std::domain_error);
  CHECK_THROWS_AS(g_term(s, kRoom, 1, 1e-8, SummationMode::zero_frequency_only, {}),
                  std::invalid_argument);
}

TEST_CASE("cap hit is flagged converged = false with the partial sum") {
  auto s = testsup::constant_system(2.0, 4.0, 3.0);
  IntegrationSettings set;
  set.max_matsubara_n = 5;
  const EnergyResult r = free_energy(s, kRoom, 1e-8, SummationMode::retarded, set);
  CHECK_FALSE(r.converged);
  CHECK(r.F != 0.0);
  CHECK(r.n_terms_used == 6);
  REQUIRE(!r.warnings.empty());
}

TEST_CASE("thin-rod warning is attached below the validity threshold") {
  auto s = testsup::constant_system(2.0, 4.0, 3.0);  // radii 1 nm
  const EnergyResult near = free_energy(s, kRoom, 5e-9, SummationMode::zero_frequency_only);
  CHECK(!near.warnings.empty());
  const EnergyResult far = free_energy(s, kRoom, 5e-8, SummationMode::zero_frequency_only);
  CHECK(far.warnings.empty());
}

TEST_CASE("results are identical for any worker count") {
  auto si = std::make_shared<rodlif::DielectricModel>(
      rodlif::load_material_card(testsup::card("silica.card")));
  auto zn = std::make_shared<rodlif::DielectricModel>(
      rodlif::load_material_card(testsup::card("zinc_oxide.card")));
  auto bb = std::make_shared<rodlif::DielectricModel>(
      rodlif::load_material_card(testsup::card("bromobenzene.card")));
  RodSystem s;
  s.radius_a = 1e-9;
  s.radius_b = 1e-9;
  s.rod_a = si;
  s.rod_b = zn;
  s.medium = bb;
  IntegrationSettings serial, parallel;
  serial.threads = 1;
  parallel.threads = 7;
  for (double R : {2e-8, 3e-7}) {
    const EnergyResult a = free_energy(s, kRoom, R, SummationMode::retarded, serial);
    const EnergyResult b = free_energy(s, kRoom, R, SummationMode::retarded, parallel);
    CHECK(a.F == b.F);
    CHECK(a.n_terms_used == b.n_terms_used);
  }
}

TEST_CASE("force is the negative slope of the free energy") {
  auto s = testsup::constant_system(2.0, 4.0, 3.0);
  IntegrationSettings set;
  const double R = 2e-8;
  // F ~ C R^-5 in the zero-frequency mode, so -dF/dR = 5 F / R
  const double F = free_energy(s, kRoom, R, SummationMode::zero_frequency_only, set).F;
  const double f = rodlif::force_per_length(s, kRoom, R, SummationMode::zero_frequency_only, set);
  CHECK(f == doctest::Approx(5.0 * F / R).epsilon(3e-5));
}

}  // TEST_SUITE
