#include "rodlif/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "rodlif/bessel.hpp"
#include "rodlif/thermal.hpp"

namespace rodlif {

void RodSystem::validate() const {
  if (!(radius_a > 0.0)) throw std::invalid_argument("RodSystem: radius_a must be > 0");
  if (!(radius_b > 0.0)) throw std::invalid_argument("RodSystem: radius_b must be > 0");
  if (!rod_a || !rod_b || !medium) {
    throw std::invalid_argument("RodSystem: all three dielectric models must be set");
  }
}

std::optional<std::string> RodSystem::thin_rod_warning(double separation) const {
  if (separation < thin_rod_min_separation()) {
    return "thin-rod approximation marginal: R = " + std::to_string(separation) +
           " m < 5 * max rod diameter = " + std::to_string(thin_rod_min_separation()) + " m";
  }
  return std::nullopt;
}

double RodSystem::max_resonance() const {
  double r = rod_a->max_resonance();
  r = std::max(r, rod_b->max_resonance());
  r = std::max(r, medium->max_resonance());
  return r;
}

double gamma_dispersion(double epsilon, double k, double omega_n, double c, KernelMode mode) {
  if (mode == KernelMode::nonretarded || omega_n == 0.0) return k;
  const double m = omega_n / c;
  return std::sqrt(k * k + epsilon * m * m);
}

namespace detail {

// All bracket differences are evaluated through the exact factorizations
//   eps3/g3^2 - epsj/gj^2 = (eps3 - epsj) k^2 / (gj^2 g3^2)
//   1/g3^2    - 1/gj^2    = (epsj - eps3) (omega/c)^2 / (gj^2 g3^2)
// so index matching (eps_j == eps_3) gives exact zeros and there is no
// cancellation noise near dielectric crossings.
KernelTerms kernel_terms(const KernelEps& eps, double a, double b, double omega_n, double k,
                         double R, KernelMode mode) {
  KernelTerms out;
  const double mu2 =
      mode == KernelMode::retarded
          ? (omega_n / constants::c_light) * (omega_n / constants::c_light)
          : 0.0;
  const double k2 = k * k;
  const double g1s = k2 + eps.e1 * mu2;
  const double g2s = k2 + eps.e2 * mu2;
  const double g3s = k2 + eps.e3 * mu2;
  if (g3s == 0.0) return out;  // k = 0, omega_n = 0 corner

  const double w = R * std::sqrt(g3s);
  const double K0 = bessel_k(0, w);
  if (K0 == 0.0 && w > 3.0) return out;  // underflow region, terms are ~exp(-2w)
  const double K1 = bessel_k(1, w);
  const double K2 = K0 + 2.0 * K1 / w;

  const double d1 = eps.e3 - eps.e1;
  const double d2 = eps.e3 - eps.e2;
  const double D1 = eps.e3 + eps.e1;
  const double D2 = eps.e3 + eps.e2;
  const double ab2 = (a * a) * (b * b);
  const double g3s2 = g3s * g3s;

  out.k0_group = -(ab2 / 4.0) * (d1 * d2 / (eps.e3 * eps.e3)) * g3s2 * (K0 * K0);

  // (d1 * d2) grouped first and the pair sum kept explicit so the 1 <-> 2
  // swap is bit-exact
  out.k1_group = -(ab2 / 2.0) * (d1 * d2) * (k2 * g3s2 * (K1 * K1) / eps.e3) *
                 (1.0 / (D2 * g2s) + 1.0 / (D1 * g1s));

  const double bracket = (k2 * k2) / (g1s * g2s) +
                         (eps.e3 * eps.e3) * mu2 * (mu2 - 2.0 * k2) / g3s2;
  out.k2_group = -(ab2 / 2.0) * (d1 * d2 / (D1 * D2)) * bracket * g3s2 * (K2 * K2 + K0 * K0);
  return out;
}

}  // namespace detail

double kernel_G(const RodSystem& system, double omega_n, double k, double R, KernelMode mode) {
  if (!(R > 0.0)) throw std::domain_error("kernel_G: separation R must be > 0");
  if (!(k >= 0.0)) throw std::domain_error("kernel_G: k must be >= 0");
  if (!(omega_n >= 0.0)) throw std::domain_error("kernel_G: omega_n must be >= 0");
  detail::KernelEps eps;
  eps.e1 = system.rod_a->eval(omega_n);
  eps.e2 = system.rod_b->eval(omega_n);
  eps.e3 = system.medium->eval(omega_n);
  return detail::kernel_G_eps(eps, system.radius_a, system.radius_b, omega_n, k, R, mode);
}

}  // namespace rodlif
