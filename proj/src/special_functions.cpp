#include "ctail/special_functions.hpp"

#include <cmath>
#include <limits>

#include "ctail/errors.hpp"

namespace ctail {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

void check_args(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("incomplete gamma: shape must be > 0");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma: argument must be >= 0");
}

// log P(a, x) via the series; valid for x < a + 1.
double log_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) {
      return std::log(sum) - x + a * std::log(x) - std::lgamma(a);
    }
  }
  throw NumericalError("incomplete gamma: series did not converge");
}

// log Q(a, x) via the modified Lentz continued fraction; valid for x >= a + 1.
double log_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) {
      return std::log(h) - x + a * std::log(x) - std::lgamma(a);
    }
  }
  throw NumericalError("incomplete gamma: continued fraction did not converge");
}

}  // namespace

double gamma_p(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return std::exp(log_p_series(a, x));
  return -std::expm1(log_q_fraction(a, x));
}

double gamma_q(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return -std::expm1(log_p_series(a, x));
  return std::exp(log_q_fraction(a, x));
}

double log_gamma_q(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
  if (x < a + 1.0) return std::log1p(-std::exp(log_p_series(a, x)));
  return log_q_fraction(a, x);
}

}  // namespace ctail
