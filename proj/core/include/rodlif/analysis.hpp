#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rodlif/free_energy.hpp"

namespace rodlif {

struct SweepPoint {
  double R = 0.0;
  double F_ret = 0.0;
  double F_nonret = 0.0;
  double F_n0 = 0.0;
  bool conv_ret = false;
  bool conv_nonret = false;
  bool conv_n0 = false;
};

enum class SweepColumn { ret, nonret, n0 };

struct Extremum {
  double R = 0.0;
  double F = 0.0;  // J/m, retarded
  bool is_maximum = false;
};

struct SweepReport {
  std::vector<SweepPoint> points;  // strictly increasing R
  std::vector<double> boundaries;  // sign changes of F_ret, 1e-4 relative in R
  std::vector<Extremum> extrema;   // interior local max/min of F_ret
  std::vector<std::pair<double, double>> ratio;  // (R, |F_ret / F_nonret|)
  std::vector<std::string> warnings;
};

// Log-spaced separation sweep computing the retarded, nonretarded and
// zero-frequency energies per point. Sign boundaries of F_ret are bracketed
// by grid points of opposite sign and refined by bisection with full-accuracy
// evaluations; extrema are refined by golden section. Points whose retarded
// column failed to converge are excluded from boundary/extremum detection and
// reported in warnings.
SweepReport sweep(const RodSystem& system, const ThermalEnvironment& env, double R_min,
                  double R_max, int points_per_decade, const IntegrationSettings& settings = {});

// d ln|F| / d ln R by centered difference at the grid point nearest R (R must
// be strictly inside the grid). Throws std::domain_error if the chosen column
// changes sign or vanishes on the stencil.
double local_exponent(const SweepReport& report, SweepColumn column, double R);

}  // namespace rodlif
