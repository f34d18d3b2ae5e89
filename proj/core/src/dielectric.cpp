#include "rodlif/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rodlif {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kCacheXiLo = 1e10;   // rad/s
constexpr double kCacheXiHi = 1e20;   // rad/s
constexpr int kCachePointsPerDecade = 400;
constexpr int kScanPointsPerDecade = 64;

double oscillator_eval(const std::vector<OscillatorTerm>& terms, double xi) {
  double eps = 1.0;
  for (const OscillatorTerm& t : terms) {
    const double r = xi / t.resonance;
    eps += t.strength / (1.0 + r * r + t.damping * xi / (t.resonance * t.resonance));
  }
  return eps;
}

// Int_{w_hi}^inf  w * (loss_hi (w_hi/w)^3) / (w^2 + xi^2) dw, without the 2/pi
double upper_tail(double w_hi, double loss_hi, double xi) {
  if (loss_hi <= 0.0) return 0.0;
  const double y = xi / w_hi;
  if (y < 0.1) {
    // 1 - atan(y)/y expanded to avoid cancellation
    const double y2 = y * y;
    return loss_hi * (1.0 / 3.0 - y2 / 5.0 + y2 * y2 / 7.0 - y2 * y2 * y2 / 9.0);
  }
  const double bracket = 1.0 / w_hi - (kPi / 2.0 - std::atan(w_hi / xi)) / xi;
  return loss_hi * w_hi * w_hi * w_hi * bracket / (xi * xi);
}

// Int_0^{w_lo}  w * (loss_lo w / w_lo) / (w^2 + xi^2) dw, without the 2/pi
double lower_tail(double w_lo, double loss_lo, double xi) {
  if (loss_lo <= 0.0) return 0.0;
  if (xi == 0.0) return loss_lo;
  const double y = w_lo / xi;
  if (y < 0.1) {
    // (w_lo - xi atan(y)) expanded to avoid cancellation
    const double y2 = y * y;
    return loss_lo * (w_lo * w_lo / (xi * xi)) * (1.0 / 3.0 - y2 / 5.0 + y2 * y2 / 7.0);
  }
  return (loss_lo / w_lo) * (w_lo - xi * std::atan(y));
}

}  // namespace

void TabulatedLossData::validate() const {
  if (omega.size() != loss.size()) {
    throw std::invalid_argument("loss table: frequency and loss columns differ in length");
  }
  if (omega.size() < 2) {
    throw std::invalid_argument("loss table: need at least 2 points");
  }
  if (!(omega.front() > 0.0)) {
    throw std::invalid_argument("loss table: frequencies must be positive");
  }
  for (size_t i = 0; i + 1 < omega.size(); ++i) {
    if (!(omega[i] < omega[i + 1])) {
      throw std::invalid_argument("loss table: frequencies must be strictly increasing (row " +
                                  std::to_string(i + 2) + ")");
    }
  }
  for (size_t i = 0; i < loss.size(); ++i) {
    if (!(loss[i] >= 0.0)) {
      throw std::invalid_argument("loss table: eps'' must be >= 0 (row " + std::to_string(i + 1) +
                                  ")");
    }
  }
}

double kk_transform(const TabulatedLossData& data, double xi) {
  data.validate();
  if (!(xi >= 0.0)) {
    throw std::domain_error("kk_transform: xi must be >= 0");
  }
  const size_t n = data.omega.size();
  double integral = 0.0;
  double prev_f = data.omega[0] * data.loss[0] / (data.omega[0] * data.omega[0] + xi * xi);
  for (size_t i = 1; i < n; ++i) {
    const double f = data.omega[i] * data.loss[i] / (data.omega[i] * data.omega[i] + xi * xi);
    integral += 0.5 * (f + prev_f) * (data.omega[i] - data.omega[i - 1]);
    prev_f = f;
  }
  integral += lower_tail(data.omega.front(), data.loss.front(), xi);
  integral += upper_tail(data.omega.back(), data.loss.back(), xi);
  return 1.0 + (2.0 / kPi) * integral;
}

DielectricModel DielectricModel::from_oscillators(std::string label,
                                                  std::vector<OscillatorTerm> terms) {
  for (const OscillatorTerm& t : terms) {
    if (!(t.strength >= 0.0)) {
      throw std::invalid_argument("oscillator strength must be >= 0");
    }
    if (!(t.resonance > 0.0)) {
      throw std::invalid_argument("oscillator resonance must be > 0");
    }
    if (!(t.damping >= 0.0)) {
      throw std::invalid_argument("oscillator damping must be >= 0");
    }
  }
  DielectricModel m;
  m.label_ = std::move(label);
  m.terms_ = std::move(terms);
  for (const OscillatorTerm& t : m.terms_) {
    m.max_resonance_ = std::max(m.max_resonance_, t.resonance);
  }
  return m;
}

DielectricModel DielectricModel::from_loss_table(std::string label, TabulatedLossData data) {
  data.validate();
  DielectricModel m;
  m.label_ = std::move(label);
  m.tabulated_ = true;
  m.data_ = std::move(data);
  const double peak = *std::max_element(m.data_.loss.begin(), m.data_.loss.end());
  m.max_resonance_ = m.data_.omega.back();
  for (size_t i = m.data_.loss.size(); i-- > 0;) {
    if (m.data_.loss[i] >= 0.01 * peak) {
      m.max_resonance_ = m.data_.omega[i];
      break;
    }
  }
  m.build_cache();
  return m;
}

void DielectricModel::build_cache() {
  auto cache = std::make_shared<Cache>();
  cache->eps0 = kk_transform(data_, 0.0);
  cache->flat = cache->eps0 - 1.0 < 1e-14;
  cache->xi_lo = kCacheXiLo;
  cache->xi_hi = kCacheXiHi;
  if (!cache->flat) {
    const int decades = static_cast<int>(std::round(std::log10(kCacheXiHi / kCacheXiLo)));
    const int npts = decades * kCachePointsPerDecade + 1;
    cache->log_xi.resize(npts);
    cache->log_em1.resize(npts);
    const double dl = std::log(kCacheXiHi / kCacheXiLo) / (npts - 1);
    for (int i = 0; i < npts; ++i) {
      const double lx = std::log(kCacheXiLo) + i * dl;
      const double eps = kk_transform(data_, std::exp(lx));
      cache->log_xi[i] = lx;
      cache->log_em1[i] = std::log(std::max(eps - 1.0, 1e-300));
    }
    // Fritsch-Carlson monotone cubic slopes
    const int n = npts;
    std::vector<double> d(n - 1);
    for (int i = 0; i < n - 1; ++i) {
      d[i] = (cache->log_em1[i + 1] - cache->log_em1[i]) / dl;
    }
    cache->slope.resize(n);
    cache->slope[0] = d[0];
    cache->slope[n - 1] = d[n - 2];
    for (int i = 1; i < n - 1; ++i) {
      if (d[i - 1] * d[i] <= 0.0) {
        cache->slope[i] = 0.0;
      } else {
        cache->slope[i] = 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);  // harmonic mean
      }
    }
  }
  cache_ = std::move(cache);
}

double DielectricModel::eval_direct(double xi) const {
  if (!(xi >= 0.0)) {
    throw std::domain_error("DielectricModel::eval: xi must be >= 0");
  }
  if (!tabulated_) {
    return oscillator_eval(terms_, xi);
  }
  return kk_transform(data_, xi);
}

double DielectricModel::eval(double xi) const {
  if (!(xi >= 0.0)) {
    throw std::domain_error("DielectricModel::eval: xi must be >= 0");
  }
  if (!tabulated_) {
    return oscillator_eval(terms_, xi);
  }
  const Cache& c = *cache_;
  if (c.flat) return 1.0;
  if (xi == 0.0) return c.eps0;
  if (xi < c.xi_lo) {
    // quadratic onset: eps(i xi) = eps(0) - const * xi^2 near zero
    const double e_lo = std::exp(c.log_em1.front()) + 1.0;
    const double t = xi / c.xi_lo;
    return c.eps0 + (e_lo - c.eps0) * t * t;
  }
  if (xi > c.xi_hi) {
    // eps - 1 ~ A / xi^2 beyond the cache
    const double em1_hi = std::exp(c.log_em1.back());
    const double r = c.xi_hi / xi;
    return 1.0 + em1_hi * r * r;
  }
  const double lx = std::log(xi);
  const double dl = c.log_xi[1] - c.log_xi[0];
  size_t i = static_cast<size_t>((lx - c.log_xi.front()) / dl);
  i = std::min(i, c.log_xi.size() - 2);
  const double t = (lx - c.log_xi[i]) / dl;
  const double y0 = c.log_em1[i], y1 = c.log_em1[i + 1];
  const double m0 = c.slope[i] * dl, m1 = c.slope[i + 1] * dl;
  const double t2 = t * t, t3 = t2 * t;
  const double h = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
                   (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
  return 1.0 + std::exp(h);
}

double DielectricModel::static_value() const { return eval(0.0); }

bool operator==(const DielectricModel& a, const DielectricModel& b) {
  if (a.tabulated_ != b.tabulated_) return false;
  if (a.tabulated_) {
    return a.data_.omega == b.data_.omega && a.data_.loss == b.data_.loss;
  }
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].strength != b.terms_[i].strength ||
        a.terms_[i].resonance != b.terms_[i].resonance ||
        a.terms_[i].damping != b.terms_[i].damping) {
      return false;
    }
  }
  return true;
}

CrossingReport find_crossings(const DielectricModel& a, const DielectricModel& b,
                              double xi_min, double xi_max) {
  if (!(xi_min >= 0.0) || !(xi_min < xi_max)) {
    throw std::domain_error("find_crossings: need 0 <= xi_min < xi_max");
  }
  CrossingReport report;
  if (a == b) {
    report.notes.push_back("identical models; difference identically zero");
    return report;
  }

  auto diff = [&](double xi) { return a.eval(xi) - b.eval(xi); };

  // logarithmic scan grid; a zero lower bound is replaced by a point twelve
  // decades under xi_max and xi = 0 is probed separately
  std::vector<double> grid;
  if (xi_min == 0.0) grid.push_back(0.0);
  const double lo = xi_min > 0.0 ? xi_min : xi_max * 1e-12;
  const int npts =
      std::max(2, static_cast<int>(std::ceil(std::log10(xi_max / lo) * kScanPointsPerDecade)) + 1);
  const double dl = std::log(xi_max / lo) / (npts - 1);
  for (int i = 0; i < npts; ++i) {
    grid.push_back(lo * std::exp(i * dl));
  }
  grid.back() = xi_max;

  std::vector<double> f(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) f[i] = diff(grid[i]);

  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    if (f[i] == 0.0) {
      const bool interior = i > 0;
      const double before = interior ? f[i - 1] : 0.0;
      const double after = f[i + 1];
      if (interior && before * after > 0.0) {
        report.notes.push_back("tangential contact at xi = " + std::to_string(grid[i]) +
                               " rad/s (no sign change)");
      }
      continue;
    }
    if (f[i] * f[i + 1] < 0.0) {
      double lo_x = grid[i], hi_x = grid[i + 1];
      double f_lo = f[i];
      for (int it = 0; it < 200; ++it) {
        const double mid = lo_x > 0.0 ? std::sqrt(lo_x * hi_x) : 0.5 * (lo_x + hi_x);
        const double fm = diff(mid);
        if (fm == 0.0) {
          lo_x = hi_x = mid;
          break;
        }
        if ((fm > 0.0) == (f_lo > 0.0)) {
          lo_x = mid;
          f_lo = fm;
        } else {
          hi_x = mid;
        }
        if (hi_x - lo_x <= 1e-10 * hi_x) break;
      }
      Crossing c;
      c.xi = 0.5 * (lo_x + hi_x);
      c.sign_below = f[i] > 0.0 ? 1 : -1;
      report.crossings.push_back(c);
    }
  }
  return report;
}

}  // namespace rodlif
