#include "rodlif/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rodlif {

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_gauss = fc * kWg[3];
  double result_kronrod = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    result_kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = result_kronrod * half;
  // |K15 - G7| is a conservative local error estimate for smooth integrands
  p.error = std::fabs((result_kronrod - result_gauss) * half);
  return p;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    double rel_tol, double abs_tol,
                                    int max_panels) {
  if (breakpoints.size() < 2) {
    throw std::invalid_argument("integrate_adaptive: need at least two breakpoints");
  }
  std::vector<Panel> panels;
  panels.reserve(static_cast<size_t>(max_panels));
  QuadratureResult res;
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    panels.push_back(evaluate_panel(f, breakpoints[i], breakpoints[i + 1]));
    res.evaluations += 15;
  }

  auto totals = [&panels]() {
    double v = 0.0, e = 0.0;
    for (const Panel& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair<double, double>(v, e);
  };

  auto [value, err] = totals();
  while (err > std::max(rel_tol * std::fabs(value), abs_tol) &&
         static_cast<int>(panels.size()) < max_panels) {
    size_t worst = 0;
    for (size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].error > panels[worst].error) worst = i;
    }
    const Panel old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    if (mid <= old.a || mid >= old.b) break;  // interval exhausted
    panels[worst] = evaluate_panel(f, old.a, mid);
    panels.push_back(evaluate_panel(f, mid, old.b));
    res.evaluations += 30;
    std::tie(value, err) = totals();
  }

  res.value = value;
  res.error_estimate = err;
  res.converged = err <= std::max(rel_tol * std::fabs(value), abs_tol);
  return res;
}

}  // namespace rodlif
