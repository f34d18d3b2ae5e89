#pragma once

#include <string>
#include <vector>

#include "rodlif/kernel.hpp"
#include "rodlif/thermal.hpp"

namespace rodlif {

enum class SummationMode { retarded, nonretarded, zero_frequency_only };

struct IntegrationSettings {
  double rel_tol = 1e-8;          // relative target for integrals and the sum
  double abs_floor = 1e-35;       // J/m; absolute floor for near-zero energies
  int max_matsubara_n = 20000;    // hard cap on the frequency sum
  double k_upper_multiplier = 60.0;  // k integrated up to this / R
  int max_panels = 400;           // adaptive-quadrature subdivision limit
  int threads = 1;                // worker count; results are thread-count independent

  void validate() const;  // throws std::invalid_argument
};

struct EnergyResult {
  double R = 0.0;                 // m
  double F = 0.0;                 // J/m; positive = repulsion
  SummationMode mode = SummationMode::retarded;
  int n_terms_used = 0;
  long k_evals = 0;
  bool converged = false;
  double tail_estimate = 0.0;     // J/m; residual after truncation/completion
  std::vector<std::string> warnings;
};

// One Matsubara term: g(omega_n) = (1/beta) Int_0^{k_max} dk/(2 pi) G(omega_n, k),
// k_max = k_upper_multiplier / R (the exponential tail beyond is analytically
// negligible). The integral runs in u = k R with a log-graded initial panel
// set near u = 0. For n = 0 the retarded and nonretarded paths evaluate
// identical arithmetic, so the zero mode is bit-identical across modes.
double g_term(const RodSystem& system, const ThermalEnvironment& env, int n, double R,
              SummationMode mode, const IntegrationSettings& settings,
              long* k_evals = nullptr, bool* integral_converged = nullptr);

// F(R) = sum_n' g(omega_n) with the n = 0 term halved. Truncation: terms are
// accumulated in ascending n (batched across workers, fold order fixed) until
// twenty consecutive terms fall below rel_tol |F| + abs_floor and omega_n is
// past every dielectric feature (or deep in the retardation cutoff), then the
// remaining tail is completed by geometric or power-law extrapolation; the
// residual uncertainty is recorded and must pass the tolerance for
// converged = true.
EnergyResult free_energy(const RodSystem& system, const ThermalEnvironment& env, double R,
                         SummationMode mode, const IntegrationSettings& settings = {});

// -dF/dR by the symmetric 3-point stencil with step R/1000. N/m.
double force_per_length(const RodSystem& system, const ThermalEnvironment& env, double R,
                        SummationMode mode, const IntegrationSettings& settings = {});

}  // namespace rodlif
