#pragma once

namespace rodlif {

// Modified Bessel function of the second kind K_n(x) for n in {0, 1, 2}.
//
// Relative error is <= 1e-12 over x in [1e-8, 700] (measured ~1e-15 against
// a 40-digit reference table). For x large enough that the result underflows
// the function returns exact 0.0; that is not an error, the interaction
// kernel legitimately decays like exp(-2 x).
//
// Throws std::domain_error for x <= 0 or an order outside {0, 1, 2}.
double bessel_k(int order, double x);

namespace detail {

// The two branches behind bessel_k, exposed so the seam at x = 2 can be
// checked directly: ascending series below, Steed continued fraction above.
void bessel_k01_series(double x, double& k0, double& k1);
void bessel_k01_steed(double x, double& k0, double& k1);

}  // namespace detail

}  // namespace rodlif
