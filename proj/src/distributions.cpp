#include "ctail/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ctail/errors.hpp"
#include "ctail/quadrature.hpp"
#include "ctail/special_functions.hpp"

namespace ctail {

TailModel::TailModel(TailKind kind, double gamma, double shape, double support_min)
    : kind_(kind), gamma_(gamma), shape_(shape), support_min_(support_min) {
  if (!(gamma > 0.0) || !std::isfinite(1.0 / gamma) || !std::isfinite(gamma)) {
    throw DomainError("tail model: gamma must be finite and > 0");
  }
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw DomainError("tail model: shape must be finite and > 0");
  }
  if (!(support_min > 0.0) || !std::isfinite(support_min)) {
    throw DomainError("tail model: support_min must be finite and > 0");
  }
}

TailModel TailModel::pareto(double gamma, double support_min) {
  return TailModel(TailKind::Pareto, gamma, 1.0, support_min);
}

TailModel TailModel::log_gamma(double gamma, double shape) {
  return TailModel(TailKind::LogGamma, gamma, shape, 1.0);
}

double TailModel::survival(double x) const {
  if (!(x > 0.0)) throw DomainError("survival: x must be > 0");
  if (x <= support_min_) return 1.0;
  if (shape_ == 1.0) return std::pow(x / support_min_, -alpha());
  return gamma_q(shape_, alpha() * std::log(x / support_min_));
}

double TailModel::log_survival(double x) const {
  if (!(x > 0.0)) throw DomainError("survival: x must be > 0");
  if (x <= support_min_) return 0.0;
  const double u = std::log(x / support_min_);
  if (shape_ == 1.0) return -alpha() * u;
  return log_gamma_q(shape_, alpha() * u);
}

double TailModel::log_density(double x) const {
  if (!(x > support_min_)) throw DomainError("density: x must exceed support_min");
  const double u = std::log(x / support_min_);
  const double a = alpha();
  return shape_ * std::log(a) - std::lgamma(shape_) + (shape_ - 1.0) * std::log(u) - a * u -
         std::log(x);
}

double TailModel::density(double x) const { return std::exp(log_density(x)); }

double CensorModel::gamma_z() const noexcept {
  return data.gamma() * censor.gamma() / (data.gamma() + censor.gamma());
}

double CensorModel::limit_uncensored_probability() const noexcept {
  return censor.gamma() / (data.gamma() + censor.gamma());
}

CensoredSample::CensoredSample(std::vector<double> z, std::vector<std::uint8_t> delta)
    : z_(std::move(z)), delta_(std::move(delta)) {
  if (z_.empty()) throw DomainError("censored sample: n must be >= 1");
  if (z_.size() != delta_.size()) throw DomainError("censored sample: z and delta differ in length");
  for (std::size_t i = 0; i < z_.size(); ++i) {
    if (!(z_[i] > 0.0) || !std::isfinite(z_[i])) {
      throw DomainError("censored sample: z[" + std::to_string(i) + "] must be finite and > 0");
    }
    if (delta_[i] > 1) {
      throw DomainError("censored sample: delta[" + std::to_string(i) + "] must be 0 or 1");
    }
  }
}

double CensoredSample::censor_fraction() const noexcept {
  std::size_t uncensored = 0;
  for (auto d : delta_) uncensored += d;
  return 1.0 - static_cast<double>(uncensored) / static_cast<double>(delta_.size());
}

double survival(const TailModel& model, double x) { return model.survival(x); }

std::vector<double> sample(const TailModel& model, std::size_t count, RandomStream& rng) {
  std::vector<double> out(count);
  const double scale = model.gamma();
  for (auto& x : out) x = model.support_min() * std::exp(scale * rng.gamma(model.shape()));
  return out;
}

CensoredSample simulate_censored(const CensorModel& cm, std::size_t n, RandomStream& rng) {
  auto x = sample(cm.data, n, rng);
  const auto y = sample(cm.censor, n, rng);
  std::vector<std::uint8_t> delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    delta[i] = x[i] <= y[i] ? 1 : 0;
    x[i] = std::min(x[i], y[i]);
  }
  return CensoredSample(std::move(x), std::move(delta));
}

double lambda_prob(const CensorModel& cm, double x) {
  if (!(x > std::max(cm.data.support_min(), cm.censor.support_min()))) {
    throw DomainError("lambda: x must exceed both support minima");
  }
  const double log_num = cm.data.log_density(x) + cm.censor.log_survival(x);
  const double log_other = cm.censor.log_density(x) + cm.data.log_survival(x);
  // num / (num + other) = 1 / (1 + exp(log_other - log_num))
  return 1.0 / (1.0 + std::exp(log_other - log_num));
}

double expected_censor_rate(const CensorModel& cm) {
  const TailModel& x_law = cm.data;
  const TailModel& y_law = cm.censor;
  const double ay = y_law.alpha();
  const double by = y_law.shape();

  // Y = m_Y exp(w), w ~ Gamma(by, rate ay). Truncate w where the Y tail mass is < 1e-10;
  // the dropped piece of the integral is bounded by that mass since S_X <= 1.
  double w_max = std::max(1.0, by / ay);
  while (gamma_q(by, ay * w_max) >= 1e-10) w_max *= 2.0;

  // w = v^(1/by) absorbs the w^(by-1) factor of the gamma density, removing the
  // endpoint singularity for by < 1:  g(w) dw = ay^by / Gamma(by+1) exp(-ay w) dv.
  const double log_norm = by * std::log(ay) - std::lgamma(by + 1.0);
  const double log_shift = std::log(y_law.support_min() / x_law.support_min());
  const double ax = x_law.alpha();
  const double bx = x_law.shape();
  auto integrand = [&](double v) {
    const double w = std::pow(v, 1.0 / by);
    const double u = log_shift + w;  // log(y / m_X)
    double sx = 1.0;
    if (u > 0.0) sx = bx == 1.0 ? std::exp(-ax * u) : gamma_q(bx, ax * u);
    return sx * std::exp(log_norm - ay * w);
  };
  QuadratureOptions options;
  options.abs_tol = 1e-12;
  options.rel_tol = 1e-10;
  const auto result = integrate(integrand, 0.0, std::pow(w_max, by), options);
  if (!(result.error <= 1e-8)) throw NumericalError("censor rate: quadrature did not converge");
  return std::clamp(result.value, 0.0, 1.0);
}

double a2_diagnostic(const TailModel& model, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("a2 diagnostic: x must be finite and > 0");
  const double u0 = std::log(x / model.support_min());
  if (!(u0 > 1.0)) throw DomainError("a2 diagnostic: requires log(x / support_min) > 1");
  const double shape = model.shape();
  if (shape == 1.0) return 0.0;
  const double a = model.alpha();
  // In u = log y and v = u - u0 the tail integrals become
  //   I(p) = exp(-a u0) * int_0^inf exp(-a v) (u0 + v)^p dv;
  // the common exp(-a u0) cancels in the ratio.
  auto tail_integral = [&](double power) {
    QuadratureOptions options;
    options.abs_tol = 0.0;
    options.rel_tol = 1e-12;
    return integrate_to_infinity(
               [&](double v) { return std::exp(-a * v) * std::pow(u0 + v, power); }, 0.0,
               options)
        .value;
  };
  return std::fabs(shape - 1.0) * tail_integral(shape - 2.0) / tail_integral(shape - 1.0);
}

}  // namespace ctail
