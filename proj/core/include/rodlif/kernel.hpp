#pragma once

#include <memory>
#include <optional>
#include <string>

#include "rodlif/dielectric.hpp"

namespace rodlif {

enum class KernelMode { retarded, nonretarded };

// Two parallel thin rods (radii a, b; dielectric models eps_1, eps_2) in a
// fluid medium (eps_3). Valid for separations much larger than the rod
// diameters; below thin_rod_min_separation() evaluations attach a warning.
struct RodSystem {
  double radius_a = 0.0;  // m
  double radius_b = 0.0;  // m
  std::shared_ptr<const DielectricModel> rod_a;   // eps_1
  std::shared_ptr<const DielectricModel> rod_b;   // eps_2
  std::shared_ptr<const DielectricModel> medium;  // eps_3

  void validate() const;  // throws std::invalid_argument
  double thin_rod_min_separation() const {
    return 5.0 * 2.0 * (radius_a > radius_b ? radius_a : radius_b);
  }
  std::optional<std::string> thin_rod_warning(double separation) const;
  double max_resonance() const;
};

// gamma_alpha = sqrt(k^2 + eps_alpha (omega_n/c)^2); the nonretarded mode is
// the c -> infinity limit and returns k exactly. The retarded value at
// omega_n = 0 is also exactly k.
double gamma_dispersion(double epsilon, double k, double omega_n, double c, KernelMode mode);

// Interaction kernel G(omega_n, k) of the two-rod geometry: the K0^2 group,
// the K1^2 group and the (K2^2 + K0^2) group, each proportional to
// (eps3 - eps1)(eps3 - eps2) after exact regrouping of the bracket
// differences. Dimensionless. eps_alpha are evaluated at xi = omega_n in
// both modes; the k = 0, omega_n = 0 corner returns 0 (integrable endpoint
// never sampled by the quadrature).
//
// Throws std::domain_error for R <= 0.
double kernel_G(const RodSystem& system, double omega_n, double k, double R, KernelMode mode);

namespace detail {

// Dielectric values at one Matsubara frequency, hoisted out of the k-loop.
struct KernelEps {
  double e1 = 1.0, e2 = 1.0, e3 = 1.0;
};

struct KernelTerms {
  double k0_group = 0.0;  // the K0^2 term
  double k1_group = 0.0;  // the K1^2 term
  double k2_group = 0.0;  // the (K2^2 + K0^2) term
};

KernelTerms kernel_terms(const KernelEps& eps, double a, double b, double omega_n, double k,
                         double R, KernelMode mode);

inline double kernel_G_eps(const KernelEps& eps, double a, double b, double omega_n, double k,
                           double R, KernelMode mode) {
  const KernelTerms t = kernel_terms(eps, a, b, omega_n, k, R, mode);
  return t.k0_group + t.k1_group + t.k2_group;
}

}  // namespace detail

}  // namespace rodlif
