#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "rodlif/thermal.hpp"

using rodlif::ThermalEnvironment;
using rodlif::matsubara_weight;

namespace {
struct BesselReferenceRow {
  double x, k0, k1, k2;
};
#include "oracles/scalar_reference.inc"
}

TEST_SUITE("matsubara") {

TEST_CASE("zero mode is zero at any temperature") {
  CHECK(ThermalEnvironment(300.0).matsubara_frequency(0) == 0.0);
  CHECK(ThermalEnvironment(4.2).matsubara_frequency(0) == 0.0);
}

TEST_CASE("n = 1 at 300 K matches the constant-arithmetic reference") {
  const ThermalEnvironment env(300.0);
  CHECK(env.matsubara_frequency(1) ==
        doctest::Approx(kMatsubaraOmega1At300K).epsilon(1e-15));
}

TEST_CASE("exactly linear in n") {
  const ThermalEnvironment env(300.0);
  CHECK(env.matsubara_frequency(4) == 2.0 * env.matsubara_frequency(2));
  CHECK(env.matsubara_frequency(1024) == 1024.0 * env.matsubara_frequency(1));
}

TEST_CASE("spacing is constant and equals 2 pi kB T / hbar") {
  const ThermalEnvironment env(137.0);
  const double spacing = env.matsubara_spacing();
  for (int n = 0; n < 5000; n += 13) {
    const double d = env.matsubara_frequency(n + 1) - env.matsubara_frequency(n);
    CHECK(d == doctest::Approx(spacing).epsilon(1e-12));
  }
}

TEST_CASE("doubling T doubles every nonzero frequency exactly") {
  const ThermalEnvironment a(150.0), b(300.0);
  for (int n : {1, 2, 17, 400}) {
    CHECK(b.matsubara_frequency(n) == 2.0 * a.matsubara_frequency(n));
  }
}

TEST_CASE("primed-sum weights") {
  CHECK(matsubara_weight(0) == 0.5);
  CHECK(matsubara_weight(1) == 1.0);
  CHECK(matsubara_weight(1000) == 1.0);
  CHECK_THROWS_AS(matsubara_weight(-1), std::domain_error);
}

TEST_CASE("beta is derived from the stored constants") {
  const ThermalEnvironment env(300.0);
  CHECK(env.beta() == 1.0 / (rodlif::constants::k_boltzmann * 300.0));
  CHECK_THROWS_AS(ThermalEnvironment(0.0), std::domain_error);
  CHECK_THROWS_AS(ThermalEnvironment(-10.0), std::domain_error);
  CHECK_THROWS_AS(env.matsubara_frequency(-1), std::domain_error);
}

}  // TEST_SUITE
