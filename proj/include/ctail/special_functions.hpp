#pragma once

namespace ctail {

// Regularized incomplete gamma functions for shape a > 0 and x >= 0.
//
// Uses the power series for P when x < a + 1 and the Lentz continued
// fraction for Q otherwise; both are iterated to a relative tolerance of
// about 1e-15. Throws DomainError for a <= 0 or x < 0 and NumericalError
// if an expansion fails to converge.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// log Q(a, x). Stays finite deep in the tail where Q itself underflows.
double log_gamma_q(double a, double x);

}  // namespace ctail
