#pragma once

#include <memory>
#include <string>
#include <vector>

namespace rodlif {

// One term of the imaginary-axis oscillator representation
//   eps(i xi) = 1 + sum_j C_j / (1 + (xi/w_j)^2 + g_j xi / w_j^2)
struct OscillatorTerm {
  double strength = 0.0;   // C_j, dimensionless, >= 0
  double resonance = 0.0;  // w_j, rad/s, > 0
  double damping = 0.0;    // g_j, rad/s, >= 0
};

// Two-column absorption spectrum eps''(omega) on a strictly increasing grid.
struct TabulatedLossData {
  std::vector<double> omega;  // rad/s, > 0, strictly increasing
  std::vector<double> loss;   // eps'' >= 0, same length

  void validate() const;  // throws std::invalid_argument naming the defect
};

// Kramers-Kronig transform of tabulated loss data, evaluated directly:
//   eps(i xi) = 1 + (2/pi) Int_0^inf w eps''(w) / (w^2 + xi^2) dw
// Trapezoid over the tabulated grid plus closed-form tails: eps'' ~ w below
// the lowest tabulated frequency, eps'' ~ w^-3 above the highest.
double kk_transform(const TabulatedLossData& data, double xi);

// A material's dielectric response on the imaginary frequency axis.
// Immutable after construction; evaluation is read-only and thread safe.
// Tabulated sources are KK-transformed onto a dense log-xi cache at
// construction and interpolated monotonically; eval_direct() bypasses the
// cache for verification.
class DielectricModel {
 public:
  static DielectricModel from_oscillators(std::string label,
                                          std::vector<OscillatorTerm> terms);
  static DielectricModel from_loss_table(std::string label, TabulatedLossData data);

  // eps(i xi); throws std::domain_error for xi < 0
  double eval(double xi) const;
  double operator()(double xi) const { return eval(xi); }
  double eval_direct(double xi) const;

  const std::string& label() const { return label_; }
  double static_value() const;  // eps(i 0)
  bool is_tabulated() const { return tabulated_; }
  const std::vector<OscillatorTerm>& oscillators() const { return terms_; }

  // Largest spectral feature, used by the Matsubara truncation rule:
  // max resonance frequency for oscillator sources; for tabulated sources
  // the highest frequency where the loss still exceeds 1% of its peak.
  double max_resonance() const { return max_resonance_; }

  friend bool operator==(const DielectricModel& a, const DielectricModel& b);

 private:
  DielectricModel() = default;
  void build_cache();

  std::string label_;
  bool tabulated_ = false;
  std::vector<OscillatorTerm> terms_;
  TabulatedLossData data_;
  double max_resonance_ = 0.0;

  // monotone cubic interpolant of log(eps-1) vs log(xi)
  struct Cache {
    std::vector<double> log_xi;
    std::vector<double> log_em1;  // log(eps - 1)
    std::vector<double> slope;
    double eps0 = 1.0;      // exact value at xi = 0
    double xi_lo = 0.0, xi_hi = 0.0;
    bool flat = false;      // identically-zero loss -> eps == 1
  };
  std::shared_ptr<const Cache> cache_;
};

struct Crossing {
  double xi = 0.0;     // rad/s
  int sign_below = 0;  // sign of eps_a - eps_b just below xi
};

struct CrossingReport {
  std::vector<Crossing> crossings;
  std::vector<std::string> notes;
};

// Every simple root of eps_a(i xi) - eps_b(i xi) in [xi_min, xi_max],
// bracketed on a 64-points-per-decade logarithmic scan and refined by
// bisection to 1e-10 relative in xi. Identical models short-circuit to an
// empty report. Tangential grid-point contacts are reported in notes only.
CrossingReport find_crossings(const DielectricModel& a, const DielectricModel& b,
                              double xi_min, double xi_max);

}  // namespace rodlif
