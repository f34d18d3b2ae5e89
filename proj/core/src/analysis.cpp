#include "rodlif/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel_util.hpp"

namespace rodlif {

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

double eval_ret(const RodSystem& system, const ThermalEnvironment& env, double R,
                const IntegrationSettings& settings, std::vector<std::string>& warnings) {
  const EnergyResult r = free_energy(system, env, R, SummationMode::retarded, settings);
  if (!r.converged) {
    warnings.push_back("refinement point R = " + std::to_string(R) + " m did not converge");
  }
  return r.F;
}

}  // namespace

SweepReport sweep(const RodSystem& system, const ThermalEnvironment& env, double R_min,
                  double R_max, int points_per_decade, const IntegrationSettings& settings) {
  if (!(R_min > 0.0) || !(R_min < R_max)) {
    throw std::invalid_argument("sweep: need 0 < R_min < R_max");
  }
  if (points_per_decade < 4) {
    throw std::invalid_argument("sweep: points_per_decade must be >= 4");
  }
  system.validate();
  settings.validate();

  const double decades = std::log10(R_max / R_min);
  const int n_grid = static_cast<int>(std::floor(decades * points_per_decade)) + 1;
  std::vector<double> grid(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    grid[i] = R_min * std::pow(10.0, static_cast<double>(i) / points_per_decade);
  }
  if (grid.back() < R_max * (1.0 - 1e-12)) grid.push_back(R_max);

  SweepReport report;
  report.points.resize(grid.size());
  std::vector<std::vector<std::string>> point_warnings(grid.size());

  IntegrationSettings inner = settings;
  inner.threads = 1;  // grid points are the parallel unit
  detail::parallel_for(static_cast<int>(grid.size()), settings.threads, [&](int i) {
    SweepPoint p;
    p.R = grid[i];
    const EnergyResult ret = free_energy(system, env, p.R, SummationMode::retarded, inner);
    const EnergyResult non = free_energy(system, env, p.R, SummationMode::nonretarded, inner);
    const EnergyResult zf =
        free_energy(system, env, p.R, SummationMode::zero_frequency_only, inner);
    p.F_ret = ret.F;
    p.F_nonret = non.F;
    p.F_n0 = zf.F;
    p.conv_ret = ret.converged;
    p.conv_nonret = non.converged;
    p.conv_n0 = zf.converged;
    if (!ret.converged) point_warnings[i].push_back("retarded energy not converged");
    if (!non.converged) point_warnings[i].push_back("nonretarded energy not converged");
    if (!zf.converged) point_warnings[i].push_back("zero-frequency energy not converged");
    report.points[i] = p;
  });
  for (size_t i = 0; i < grid.size(); ++i) {
    for (const std::string& w : point_warnings[i]) {
      report.warnings.push_back("R = " + std::to_string(grid[i]) + " m: " + w);
    }
  }

  for (const SweepPoint& p : report.points) {
    report.ratio.emplace_back(p.R, p.F_nonret == 0.0 ? 0.0 : std::fabs(p.F_ret / p.F_nonret));
  }

  // sign boundaries of the retarded column, converged points only
  for (size_t i = 0; i + 1 < report.points.size(); ++i) {
    const SweepPoint& lo = report.points[i];
    const SweepPoint& hi = report.points[i + 1];
    if (!lo.conv_ret || !hi.conv_ret) continue;
    if (sign_of(lo.F_ret) * sign_of(hi.F_ret) != -1) continue;
    double a = lo.R, b = hi.R;
    int sign_a = sign_of(lo.F_ret);
    while ((b - a) > 1e-4 * 0.5 * (a + b)) {
      const double mid = std::sqrt(a * b);
      const double fm = eval_ret(system, env, mid, settings, report.warnings);
      const int sm = sign_of(fm);
      if (sm == 0) {
        a = b = mid;
        break;
      }
      if (sm == sign_a) {
        a = mid;
      } else {
        b = mid;
      }
    }
    report.boundaries.push_back(0.5 * (a + b));
  }

  // interior extrema of the retarded column; golden-section in log R
  constexpr double kInvPhi = 0.6180339887498949;
  for (size_t i = 1; i + 1 < report.points.size(); ++i) {
    const SweepPoint& pm = report.points[i - 1];
    const SweepPoint& pc = report.points[i];
    const SweepPoint& pp = report.points[i + 1];
    if (!pm.conv_ret || !pc.conv_ret || !pp.conv_ret) continue;
    const bool is_max = pc.F_ret > pm.F_ret && pc.F_ret > pp.F_ret;
    const bool is_min = pc.F_ret < pm.F_ret && pc.F_ret < pp.F_ret;
    if (!is_max && !is_min) continue;
    const double sgn = is_max ? 1.0 : -1.0;
    double a = std::log(pm.R), b = std::log(pp.R);
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = sgn * eval_ret(system, env, std::exp(x1), settings, report.warnings);
    double f2 = sgn * eval_ret(system, env, std::exp(x2), settings, report.warnings);
    while (b - a > 1e-3) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kInvPhi * (b - a);
        f2 = sgn * eval_ret(system, env, std::exp(x2), settings, report.warnings);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kInvPhi * (b - a);
        f1 = sgn * eval_ret(system, env, std::exp(x1), settings, report.warnings);
      }
    }
    Extremum e;
    e.R = std::exp(0.5 * (a + b));
    e.F = eval_ret(system, env, e.R, settings, report.warnings);
    e.is_maximum = is_max;
    report.extrema.push_back(e);
  }
  return report;
}

double local_exponent(const SweepReport& report, SweepColumn column, double R) {
  const auto& pts = report.points;
  if (pts.size() < 3) {
    throw std::domain_error("local_exponent: need at least 3 grid points");
  }
  if (!(R > pts.front().R) || !(R < pts.back().R)) {
    throw std::domain_error("local_exponent: R must be strictly inside the grid");
  }
  size_t best = 1;
  double best_d = 1e300;
  for (size_t i = 1; i + 1 < pts.size(); ++i) {
    const double d = std::fabs(std::log(R / pts[i].R));
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  auto value = [&](size_t i) {
    switch (column) {
      case SweepColumn::ret:
        return pts[i].F_ret;
      case SweepColumn::nonret:
        return pts[i].F_nonret;
      default:
        return pts[i].F_n0;
    }
  };
  const double lo = value(best - 1);
  const double hi = value(best + 1);
  if (lo == 0.0 || hi == 0.0 || sign_of(lo) != sign_of(hi)) {
    throw std::domain_error(
        "local_exponent: column changes sign or vanishes on the stencil; exponent undefined");
  }
  return (std::log(std::fabs(hi)) - std::log(std::fabs(lo))) /
         (std::log(pts[best + 1].R) - std::log(pts[best - 1].R));
}

}  // namespace rodlif
