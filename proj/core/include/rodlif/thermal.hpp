#pragma once

#include <stdexcept>

namespace rodlif {

// CODATA 2018. kB, h and c are exact by definition; hbar is the correctly
// rounded double of h / 2 pi.
namespace constants {
inline constexpr double k_boltzmann = 1.380649e-23;        // J/K
inline constexpr double h_planck = 6.62607015e-34;         // J s
inline constexpr double hbar = 1.0545718176461565e-34;     // J s
inline constexpr double c_light = 299792458.0;             // m/s
}  // namespace constants

// Temperature plus the thermal prefactors of the Matsubara sum.
// Immutable value type.
class ThermalEnvironment {
 public:
  explicit ThermalEnvironment(double temperature_kelvin)
      : temperature_(temperature_kelvin) {
    if (!(temperature_kelvin > 0.0)) {
      throw std::domain_error("ThermalEnvironment: temperature must be > 0 K");
    }
    beta_ = 1.0 / (constants::k_boltzmann * temperature_);
    spacing_ = 2.0 * 3.14159265358979323846264338327950288 *
               constants::k_boltzmann * temperature_ / constants::hbar;
  }

  double temperature() const { return temperature_; }
  double beta() const { return beta_; }            // 1/(kB T), 1/J
  double matsubara_spacing() const { return spacing_; }  // 2 pi kB T / hbar, rad/s

  // omega_n = 2 pi n kB T / hbar; exactly linear in n
  double matsubara_frequency(int n) const {
    if (n < 0) {
      throw std::domain_error("matsubara_frequency: n must be >= 0");
    }
    return static_cast<double>(n) * spacing_;
  }

 private:
  double temperature_;
  double beta_;
  double spacing_;
};

// Primed-sum convention: the n = 0 term carries weight 1/2.
inline double matsubara_weight(int n) {
  if (n < 0) {
    throw std::domain_error("matsubara_weight: n must be >= 0");
  }
  return n == 0 ? 0.5 : 1.0;
}

}  // namespace rodlif
