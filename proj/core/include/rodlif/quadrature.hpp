#pragma once

#include <functional>
#include <span>

namespace rodlif {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod 7-15 over the consecutive panels defined by
// `breakpoints` (strictly increasing). The panel with the largest local
// error estimate is bisected until
//     sum(errors) <= max(rel_tol * |value|, abs_tol)
// or `max_panels` panels exist. Deterministic for a given integrand.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    double rel_tol, double abs_tol,
                                    int max_panels = 400);

}  // namespace rodlif
