#pragma once

#include <functional>

namespace ctail {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;     // estimated absolute error
  int intervals = 0;      // subintervals in the final partition
};

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_intervals = 2000;
};

// Globally adaptive 15-point Gauss–Kronrod quadrature on [a, b]. The interval
// with the largest error estimate is bisected until the summed error is below
// max(abs_tol, rel_tol * |value|). Throws NumericalError when max_intervals is
// exhausted first or the integrand returns a non-finite value.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

// Integral over [a, inf) through the map x = a + s / (1 - s), s in [0, 1).
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       const QuadratureOptions& options = {});

}  // namespace ctail
