#include "rodlif/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rodlif {
namespace detail {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kPi = 3.14159265358979323846264338327950288;
}  // namespace

// Ascending series for integer order (DLMF 10.31). Safe for x <= 2: the
// log term and the psi-weighted sums have the same sign there, so no
// cancellation beyond ~1 digit.
void bessel_k01_series(double x, double& k0, double& k1) {
  const double t = 0.25 * x * x;
  const double lg = std::log(0.5 * x);

  double term0 = 1.0;   // t^k / (k!)^2
  double term1 = 1.0;   // t^k / (k! (k+1)!)
  double psi_k = -kEulerGamma;        // psi(k+1)
  double psi_k1 = 1.0 - kEulerGamma;  // psi(k+2)
  double i0 = term0;
  double i1_sum = term1;
  double s0 = psi_k * term0;
  double s1 = (psi_k + psi_k1) * term1;
  for (int k = 1; k < 64; ++k) {
    term0 *= t / (static_cast<double>(k) * k);
    term1 *= t / (static_cast<double>(k) * (k + 1));
    psi_k += 1.0 / k;
    psi_k1 += 1.0 / (k + 1);
    i0 += term0;
    i1_sum += term1;
    s0 += psi_k * term0;
    s1 += (psi_k + psi_k1) * term1;
    if (term0 < 1e-19 * i0) break;
  }
  const double i1 = 0.5 * x * i1_sum;
  k0 = -lg * i0 + s0;
  k1 = 1.0 / x + lg * i1 - 0.25 * x * s1;
}

// Steed/Thompson-Barnett continued fraction CF2 at order 0, for x >= 2.
// Converges in < 40 iterations to full double precision on that range.
void bessel_k01_steed(double x, double& k0, double& k1) {
  constexpr double kEps = 1e-17;
  const double a1 = 0.25;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 1000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < kEps) break;
  }
  const double scale = std::sqrt(kPi / (2.0 * x)) * std::exp(-x);
  k0 = scale / s;
  k1 = k0 * (x + 0.5 - a1 * h) / x;
}

}  // namespace detail

double bessel_k(int order, double x) {
  if (order < 0 || order > 2) {
    throw std::domain_error("bessel_k: unsupported order " + std::to_string(order));
  }
  if (!(x > 0.0)) {
    throw std::domain_error("bessel_k: argument must be positive");
  }
  double k0, k1;
  if (x <= 2.0) {
    detail::bessel_k01_series(x, k0, k1);
  } else {
    detail::bessel_k01_steed(x, k0, k1);
  }
  switch (order) {
    case 0:
      return k0;
    case 1:
      return k1;
    default:
      // upward recurrence; all terms positive, stable for K
      return k0 + 2.0 * k1 / x;
  }
}

}  // namespace rodlif
