#include "ctail/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ctail/errors.hpp"

namespace ctail {
namespace {

bool finite_positive(double x) { return x > 0.0 && std::isfinite(x); }

double fraction(std::size_t count, std::size_t n) {
  return static_cast<double>(count) / static_cast<double>(n);
}

}  // namespace

TuningParams derive_tuning(std::size_t n, double beta, std::optional<double> gamma0,
                           std::optional<double> c) {
  if (n < 16) throw ConstraintError("n < 16 (requires n ≥ 16 so that 1/log(log n) ≤ 1)");
  if (!finite_positive(beta)) throw ConstraintError("beta ≤ 0 (requires beta > 0)");

  TuningParams tp;
  tp.n = n;
  tp.beta = beta;
  tp.gamma0 = gamma0;
  const double dn = static_cast<double>(n);
  const double log_n = std::log(dn);

  if (gamma0) {
    const double g0 = *gamma0;
    if (!finite_positive(g0)) throw ConstraintError("gamma0 ≤ 0 (requires gamma0 > 0)");
    if (beta >= g0 / 2.0) throw ConstraintError("beta ≥ gamma0/2 (requires beta < gamma0/2)");
    const double lower = beta / g0;
    tp.c = c.value_or((lower + 0.5) / 2.0);
    if (!(tp.c > lower && tp.c < 0.5)) {
      throw ConstraintError("c outside (beta/gamma0, 1/2) (requires beta/gamma0 < c < 1/2)");
    }
    tp.regime = Regime::A3;
    tp.t = std::pow(dn, beta);
  } else {
    tp.c = c.value_or(0.25);
    if (!(tp.c > 0.0 && tp.c < 0.5)) throw ConstraintError("c outside (0, 1/2) (requires 0 < c < 1/2)");
    tp.regime = Regime::NoA3;
    tp.t = std::pow(log_n, beta);
  }
  tp.s = std::pow(dn, -tp.c);
  tp.h = 1.0 / std::log(log_n);
  return tp;
}

TuningParams manual_tuning(std::size_t n, double t, double s, double h) {
  if (n < 1) throw ConstraintError("n < 1 (requires n ≥ 1)");
  if (!finite_positive(t)) throw ConstraintError("t ≤ 0 (requires t > 0)");
  if (!(s > 0.0 && s <= 1.0)) throw ConstraintError("s outside (0, 1] (requires 0 < s ≤ 1)");
  if (!finite_positive(h)) throw ConstraintError("h ≤ 0 (requires h > 0)");
  TuningParams tp;
  tp.n = n;
  tp.t = t;
  tp.s = s;
  tp.h = h;
  tp.regime = Regime::Manual;
  return tp;
}

double empirical_survival(const CensoredSample& sample, double x) {
  const auto z = sample.z();
  const auto count = std::count_if(z.begin(), z.end(), [x](double v) { return v >= x; });
  return fraction(static_cast<std::size_t>(count), sample.size());
}

double empirical_uncensored_survival(const CensoredSample& sample, double x) {
  const auto z = sample.z();
  const auto d = sample.delta();
  std::size_t count = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (d[i] == 1 && z[i] >= x) ++count;
  }
  return fraction(count, sample.size());
}

TruncatedValue rho_hat(const CensoredSample& sample, const TuningParams& tuning) {
  const auto stats = omp::tail_statistics(sample.z(), sample.delta(), tuning.t);
  const auto report = report_from_statistics(stats, tuning);
  return {report.rho_hat, report.truncated_by_s};
}

TruncatedValue zeta_hat(const CensoredSample& sample, const TuningParams& tuning) {
  const auto stats = omp::tail_statistics(sample.z(), sample.delta(), tuning.t);
  const auto report = report_from_statistics(stats, tuning);
  return {report.zeta_hat, report.truncated_by_s};
}

TruncatedValue zeta_hat_integral(const CensoredSample& sample, const TuningParams& tuning) {
  const double t = tuning.t;
  std::vector<double> above;
  for (double v : sample.z()) {
    if (v >= t) above.push_back(v);
  }
  const double p_at_t = fraction(above.size(), sample.size());
  if (p_at_t < tuning.s || above.empty()) return {0.0, true};

  // On [z_(j), z_(j+1)) the step function p_hat equals (k - j) / n, with z_(0) = t;
  // past z_(k) it is zero. Neumaier-compensated accumulation of the pieces.
  std::sort(above.begin(), above.end());
  const std::size_t k = above.size();
  double sum = 0.0;
  double compensation = 0.0;
  double left = t;
  for (std::size_t j = 0; j < k; ++j) {
    const double piece = static_cast<double>(k - j) * std::log(above[j] / left);
    const double next = sum + piece;
    if (std::fabs(sum) >= std::fabs(piece)) {
      compensation += (sum - next) + piece;
    } else {
      compensation += (piece - next) + sum;
    }
    sum = next;
    left = above[j];
  }
  // (1 / p_hat(t)) * (1 / n) * sum = sum / k
  return {(sum + compensation) / static_cast<double>(k), false};
}

EstimateReport report_from_statistics(const TailStatistics& stats, const TuningParams& tuning) {
  EstimateReport r;
  r.tuning = tuning;
  r.exceedance_count = stats.exceedances;
  r.p_at_t = fraction(stats.exceedances, stats.n);
  r.q_at_t = fraction(stats.uncensored_exceedances, stats.n);
  if (r.p_at_t < tuning.s || stats.exceedances == 0) {
    r.truncated_by_s = true;
    r.truncated_by_h = true;
    return r;
  }
  // q_hat(t) / p_hat(t) and n * p_hat(t), taken on the counts directly.
  r.rho_hat = static_cast<double>(stats.uncensored_exceedances) /
              static_cast<double>(stats.exceedances);
  r.zeta_hat = stats.log_excess_sum / static_cast<double>(stats.exceedances);
  if (r.rho_hat >= tuning.h) {
    r.gamma_x_hat = r.zeta_hat / r.rho_hat;
  } else {
    r.truncated_by_h = true;
  }
  return r;
}

EstimateReport estimate_gamma_x(const CensoredSample& sample, const TuningParams& tuning) {
  return report_from_statistics(omp::tail_statistics(sample.z(), sample.delta(), tuning.t), tuning);
}

}  // namespace ctail
