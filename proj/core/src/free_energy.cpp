#include "rodlif/free_energy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "rodlif/quadrature.hpp"
#include "parallel_util.hpp"

namespace rodlif {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// ratio of omega_n R / c beyond which every retarded term is beneath any
// conceivable tolerance (integrand suppressed by at least exp(-2 * 20))
constexpr double kRetardationDead = 20.0;

std::vector<double> u_breakpoints(double umax) {
  static const double seeds[] = {1e-4, 1e-3, 0.01, 0.05, 0.15, 0.4, 0.8, 1.4, 2.2,
                                 3.2,  4.5,  6.0,  8.0,  11.0, 15.0, 20.0, 27.0, 36.0, 47.0};
  std::vector<double> pts;
  pts.push_back(0.0);
  for (double s : seeds) {
    if (s < umax) pts.push_back(s);
  }
  pts.push_back(umax);
  return pts;
}

struct TailEstimate {
  double add = 0.0;          // signed completion added to F
  double uncertainty = 0.0;  // residual error bound
  bool usable = false;
};

// History of the last few (n, g_n) pairs drives the tail model: geometric
// when the ratios are clearly < 1 (retardation cutoff), power-law when the
// ratios crawl toward 1 (dielectric-decay regime, g ~ n^-4).
TailEstimate estimate_tail(const std::deque<std::pair<int, double>>& hist) {
  TailEstimate out;
  if (hist.size() < 7) return out;
  const size_t m = hist.size();
  const double g_last = hist.back().second;
  const int n_last = hist.back().first;

  bool all_zero = true;
  for (const auto& [n, g] : hist) {
    if (g != 0.0) all_zero = false;
  }
  if (all_zero) {
    out.usable = true;
    return out;
  }
  if (g_last == 0.0) return out;

  bool sign_stable = true;
  for (size_t i = m - 6; i < m; ++i) {
    if (hist[i].second == 0.0 || std::signbit(hist[i].second) != std::signbit(g_last)) {
      sign_stable = false;
    }
  }
  if (!sign_stable) return out;

  double rmax = 0.0, rmin = 1e300;
  double pmin = 1e300, pmax = -1e300;
  for (size_t i = m - 5; i < m; ++i) {
    const double prev = std::fabs(hist[i - 1].second);
    const double cur = std::fabs(hist[i].second);
    if (prev == 0.0 || cur == 0.0) return out;
    const double r = cur / prev;
    rmax = std::max(rmax, r);
    rmin = std::min(rmin, r);
    const double p = std::log(prev / cur) /
                     std::log(static_cast<double>(hist[i].first) / hist[i - 1].first);
    pmin = std::min(pmin, p);
    pmax = std::max(pmax, p);
  }
  if (rmax >= 1.0) return out;  // not decaying yet

  if (rmax < 0.7) {
    // geometric regime
    const double r = rmax;
    out.add = g_last * r / (1.0 - r);
    out.uncertainty = std::fabs(out.add) * std::min(1.0, (rmax - rmin) / (1.0 - rmax) + r);
    out.usable = true;
    return out;
  }

  // power-law regime g ~ n^-p
  const double p = 0.5 * (pmin + pmax);
  const double spread = pmax - pmin;
  if (!(p > 1.3) || spread > 0.5 * (p - 1.0)) return out;
  const double nl = static_cast<double>(n_last);
  const double sum_tail = std::exp(p * std::log(nl) + (1.0 - p) * std::log(nl + 0.5)) / (p - 1.0);
  out.add = g_last * sum_tail;
  out.uncertainty = std::fabs(out.add) * (spread * std::log(nl) + 3.0 / nl);
  out.usable = true;
  return out;
}

}  // namespace

void IntegrationSettings::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) {
    throw std::invalid_argument("IntegrationSettings: rel_tol must be in (0, 1e-2]");
  }
  if (max_matsubara_n < 1) {
    throw std::invalid_argument("IntegrationSettings: max_matsubara_n must be >= 1");
  }
  if (!(abs_floor >= 0.0)) {
    throw std::invalid_argument("IntegrationSettings: abs_floor must be >= 0");
  }
  if (!(k_upper_multiplier >= 10.0)) {
    throw std::invalid_argument("IntegrationSettings: k_upper_multiplier must be >= 10");
  }
  if (max_panels < 32) {
    throw std::invalid_argument("IntegrationSettings: max_panels must be >= 32");
  }
  if (threads < 1) {
    throw std::invalid_argument("IntegrationSettings: threads must be >= 1");
  }
}

double g_term(const RodSystem& system, const ThermalEnvironment& env, int n, double R,
              SummationMode mode, const IntegrationSettings& settings, long* k_evals,
              bool* integral_converged) {
  if (!(R > 0.0)) throw std::domain_error("g_term: separation R must be > 0");
  if (n < 0) throw std::domain_error("g_term: n must be >= 0");
  if (mode == SummationMode::zero_frequency_only && n != 0) {
    throw std::invalid_argument("g_term: zero_frequency_only admits only n = 0");
  }
  system.validate();
  settings.validate();

  const double omega_n = env.matsubara_frequency(n);
  const KernelMode kmode = (mode == SummationMode::retarded) ? KernelMode::retarded
                                                             : KernelMode::nonretarded;
  detail::KernelEps eps;
  eps.e1 = system.rod_a->eval(omega_n);
  eps.e2 = system.rod_b->eval(omega_n);
  eps.e3 = system.medium->eval(omega_n);

  const double pref = 1.0 / (2.0 * kPi * env.beta() * R);

  // deep in the retardation cutoff the whole integrand underflows
  if (kmode == KernelMode::retarded &&
      std::sqrt(eps.e3) * omega_n / constants::c_light * R > 800.0) {
    if (integral_converged) *integral_converged = true;
    return 0.0;
  }

  const double a = system.radius_a;
  const double b = system.radius_b;
  auto integrand = [&](double u) {
    return detail::kernel_G_eps(eps, a, b, omega_n, u / R, R, kmode);
  };
  const std::vector<double> pts = u_breakpoints(settings.k_upper_multiplier);
  const QuadratureResult q = integrate_adaptive(integrand, pts, settings.rel_tol,
                                                settings.abs_floor / pref, settings.max_panels);
  if (k_evals) *k_evals += q.evaluations;
  if (integral_converged) *integral_converged = q.converged;
  return pref * q.value;
}

EnergyResult free_energy(const RodSystem& system, const ThermalEnvironment& env, double R,
                         SummationMode mode, const IntegrationSettings& settings) {
  if (!(R > 0.0)) throw std::domain_error("free_energy: separation R must be > 0");
  system.validate();
  settings.validate();

  EnergyResult res;
  res.R = R;
  res.mode = mode;
  if (auto w = system.thin_rod_warning(R)) {
    res.warnings.push_back(*w);
  }

  bool integrals_ok = true;
  if (mode == SummationMode::zero_frequency_only) {
    bool ok = true;
    const double g0 = g_term(system, env, 0, R, mode, settings, &res.k_evals, &ok);
    res.F = 0.5 * g0;
    res.n_terms_used = 1;
    res.converged = ok;
    if (!ok) res.warnings.push_back("k-integral did not converge at n = 0");
    return res;
  }

  const double floor_omega = 10.0 * system.max_resonance();
  constexpr int kBatch = 32;
  std::deque<std::pair<int, double>> hist;

  double F = 0.0;
  int consecutive_small = 0;
  bool stopped_by_rule = false;
  std::vector<double> gbatch(kBatch);
  std::vector<long> evals(kBatch);
  std::vector<char> okbatch(kBatch);

  for (int base = 0; base <= settings.max_matsubara_n && !stopped_by_rule; base += kBatch) {
    const int count = std::min(kBatch, settings.max_matsubara_n + 1 - base);
    detail::parallel_for(count, settings.threads, [&](int i) {
      evals[i] = 0;
      bool ok = true;
      gbatch[i] = g_term(system, env, base + i, R, mode, settings, &evals[i], &ok);
      okbatch[i] = ok ? 1 : 0;
    });
    for (int i = 0; i < count; ++i) {
      const int n = base + i;
      res.k_evals += evals[i];
      if (!okbatch[i]) {
        integrals_ok = false;
        res.warnings.push_back("k-integral did not converge at n = " + std::to_string(n));
      }
      const double contrib = matsubara_weight(n) * gbatch[i];
      F += contrib;
      res.n_terms_used = n + 1;
      hist.emplace_back(n, gbatch[i]);
      if (hist.size() > 12) hist.pop_front();

      const double thr = settings.rel_tol * std::fabs(F) + settings.abs_floor;
      if (std::fabs(contrib) < thr) {
        ++consecutive_small;
      } else {
        consecutive_small = 0;
      }
      const double omega_n = env.matsubara_frequency(n);
      bool past_features = omega_n > floor_omega ||
                           (mode == SummationMode::retarded &&
                            omega_n * R / constants::c_light > kRetardationDead);
      if (!past_features && F == 0.0 && n >= 100 && consecutive_small >= 20) {
        // identically dead sum (index-matched media): every term is exact zero
        bool all_zero = true;
        for (const auto& [hn, hg] : hist) all_zero = all_zero && hg == 0.0;
        past_features = all_zero;
      }
      if (consecutive_small >= 20 && past_features) {
        const TailEstimate tail = estimate_tail(hist);
        if (tail.usable && tail.uncertainty <= thr) {
          F += tail.add;
          res.tail_estimate = tail.uncertainty;
          stopped_by_rule = true;
          break;
        }
      }
    }
  }

  res.F = F;
  if (!stopped_by_rule) {
    const TailEstimate tail = estimate_tail(hist);
    res.tail_estimate = tail.usable ? std::fabs(tail.add) + tail.uncertainty
                                    : std::fabs(hist.empty() ? 0.0 : hist.back().second) *
                                          static_cast<double>(res.n_terms_used);
    res.warnings.push_back("Matsubara cap max_matsubara_n = " +
                           std::to_string(settings.max_matsubara_n) +
                           " reached before the tail criterion");
    res.converged = false;
    return res;
  }
  res.converged = integrals_ok;
  return res;
}

double force_per_length(const RodSystem& system, const ThermalEnvironment& env, double R,
                        SummationMode mode, const IntegrationSettings& settings) {
  if (!(R > 0.0)) throw std::domain_error("force_per_length: separation R must be > 0");
  const double h = R / 1000.0;
  const double fp = free_energy(system, env, R + h, mode, settings).F;
  const double fm = free_energy(system, env, R - h, mode, settings).F;
  return -(fp - fm) / (2.0 * h);
}

}  // namespace rodlif
