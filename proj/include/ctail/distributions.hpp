#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ctail/random.hpp"

namespace ctail {

enum class TailKind { Pareto, LogGamma };

// Heavy-tailed law of X = support_min * exp(W), W ~ Gamma(shape, rate 1/gamma).
//
// shape == 1 is the Pareto law with survival (x / support_min)^(-1/gamma).
// Other shapes give the log-gamma law, whose density on x >= support_min is
//   alpha^shape / Gamma(shape) * log(x / m)^(shape - 1) * (x / m)^(-alpha) / x
// with alpha = 1/gamma, i.e. a power tail times a slowly varying log factor.
class TailModel {
 public:
  static TailModel pareto(double gamma, double support_min = 1.0);
  static TailModel log_gamma(double gamma, double shape);

  TailKind kind() const noexcept { return kind_; }
  double gamma() const noexcept { return gamma_; }
  double alpha() const noexcept { return 1.0 / gamma_; }
  double shape() const noexcept { return shape_; }
  double support_min() const noexcept { return support_min_; }

  double survival(double x) const;
  double log_survival(double x) const;
  // Density; requires x > support_min (the density is unbounded there for shape < 1).
  double log_density(double x) const;
  double density(double x) const;

 private:
  TailModel(TailKind kind, double gamma, double shape, double support_min);

  TailKind kind_;
  double gamma_;
  double shape_;
  double support_min_;
};

// Independent data law X and censoring law Y.
struct CensorModel {
  TailModel data;
  TailModel censor;

  // Tail index of Z = min(X, Y): gamma_x * gamma_y / (gamma_x + gamma_y).
  double gamma_z() const noexcept;
  // lim lambda(x) as x -> inf: gamma_y / (gamma_x + gamma_y).
  double limit_uncensored_probability() const noexcept;
};

// Observed pairs (Z_i, delta_i). Immutable after construction.
class CensoredSample {
 public:
  // Throws DomainError unless sizes match, n >= 1, every z > 0 and finite,
  // and every delta is 0 or 1.
  CensoredSample(std::vector<double> z, std::vector<std::uint8_t> delta);

  std::size_t size() const noexcept { return z_.size(); }
  std::span<const double> z() const noexcept { return z_; }
  std::span<const std::uint8_t> delta() const noexcept { return delta_; }
  // 1 - mean(delta).
  double censor_fraction() const noexcept;

 private:
  std::vector<double> z_;
  std::vector<std::uint8_t> delta_;
};

// P(X >= x). Returns 1 for x <= support_min; DomainError for x <= 0.
double survival(const TailModel& model, double x);

std::vector<double> sample(const TailModel& model, std::size_t count, RandomStream& rng);

// Draws X_1..X_n then Y_1..Y_n from rng and returns (min(X_i, Y_i), 1{X_i <= Y_i}).
CensoredSample simulate_censored(const CensorModel& cm, std::size_t n, RandomStream& rng);

// P(X <= Y | Z = x) = f_X S_Y / (f_X S_Y + f_Y S_X); requires x above both supports.
double lambda_prob(const CensorModel& cm, double x);

// P(X > Y) = integral of S_X(y) f_Y(y) dy, by adaptive quadrature in log y.
double expected_censor_rate(const CensorModel& cm);

// |x L'(x) / L(x)| for L(x) = survival(x) * x^(1/gamma). Requires log(x / support_min) > 1.
double a2_diagnostic(const TailModel& model, double x);

}  // namespace ctail
