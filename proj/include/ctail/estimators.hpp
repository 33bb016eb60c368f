#pragma once

#include <cstddef>
#include <optional>

#include "ctail/distributions.hpp"
#include "ctail/kernels.hpp"

namespace ctail {

// A3: the user supplies gamma0 with gamma_X, gamma_Y >= 2 gamma0, and
//     t = n^beta with beta < gamma0/2, beta/gamma0 < c < 1/2.
// NoA3: t = (log n)^beta with beta > 0, 0 < c < 1/2.
// Manual: t, s and h given directly (no asymptotic schedule).
// In every regime s = n^(-c) unless given manually, and h = 1 / log(log n).
enum class Regime { A3, NoA3, Manual };

struct TuningParams {
  double t = 0.0;
  double s = 0.0;
  double h = 0.0;
  std::size_t n = 0;
  double beta = 0.0;
  double c = 0.0;
  std::optional<double> gamma0;
  Regime regime = Regime::A3;
};

// Threshold schedule for sample size n. When c is absent it defaults to the
// midpoint of its admissible interval: (beta/gamma0 + 1/2) / 2 under A3 and
// 1/4 otherwise. Throws ConstraintError naming the violated inequality
// ("n < 16", "beta ≥ gamma0/2", ...).
TuningParams derive_tuning(std::size_t n, double beta, std::optional<double> gamma0 = std::nullopt,
                           std::optional<double> c = std::nullopt);

// Explicit thresholds, for small samples or experimentation. Requires t > 0,
// 0 < s <= 1 and h > 0.
TuningParams manual_tuning(std::size_t n, double t, double s, double h);

// A statistic together with whether its truncation indicator fired.
struct TruncatedValue {
  double value = 0.0;
  bool truncated = false;
};

struct EstimateReport {
  double rho_hat = 0.0;
  double zeta_hat = 0.0;
  double gamma_x_hat = 0.0;
  double p_at_t = 0.0;
  double q_at_t = 0.0;
  std::size_t exceedance_count = 0;
  bool truncated_by_s = false;  // p_hat(t) < s
  bool truncated_by_h = false;  // rho_hat < h
  TuningParams tuning;
};

// p_hat(x) = #{z_i >= x} / n.
double empirical_survival(const CensoredSample& sample, double x);
// q_hat(x) = #{z_i >= x, delta_i = 1} / n.
double empirical_uncensored_survival(const CensoredSample& sample, double x);

// q_hat(t) / p_hat(t), or 0 (truncated) when p_hat(t) < s.
TruncatedValue rho_hat(const CensoredSample& sample, const TuningParams& tuning);

// Mean log-excess over t: sum of log(z_i / t) over z_i >= t, divided by n p_hat(t);
// 0 (truncated) when p_hat(t) < s.
TruncatedValue zeta_hat(const CensoredSample& sample, const TuningParams& tuning);

// Same statistic as zeta_hat, computed as (1 / p_hat(t)) * int_t^inf p_hat(y) / y dy
// exactly over the empirical step function (sum of log increments between
// consecutive order statistics above t).
TruncatedValue zeta_hat_integral(const CensoredSample& sample, const TuningParams& tuning);

// zeta_hat / rho_hat when rho_hat >= h, otherwise 0 with truncated_by_h set.
EstimateReport estimate_gamma_x(const CensoredSample& sample, const TuningParams& tuning);

// Report assembly from precomputed statistics; estimate_gamma_x is
// report_from_statistics(omp::tail_statistics(...)).
EstimateReport report_from_statistics(const TailStatistics& stats, const TuningParams& tuning);

}  // namespace ctail
