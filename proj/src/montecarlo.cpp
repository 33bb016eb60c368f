#include "ctail/montecarlo.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "ctail/errors.hpp"
#include "ctail/estimators.hpp"
#include "ctail/random.hpp"

namespace ctail {

void ExperimentConfig::validate() const {
  if (n < 16) throw ConstraintError("n < 16 (requires n ≥ 16)");
  if (replications == 0) throw ConstraintError("replications < 1 (requires replications ≥ 1)");
  if (beta_grid.empty()) throw ConstraintError("beta grid is empty");
  for (std::size_t i = 1; i < beta_grid.size(); ++i) {
    if (!(beta_grid[i] > beta_grid[i - 1])) {
      throw ConstraintError("beta grid is not strictly increasing");
    }
  }
  for (double beta : beta_grid) {
    try {
      derive_tuning(n, beta, gamma0, c);
    } catch (const ConstraintError& e) {
      std::ostringstream os;
      os.precision(17);
      os << "beta=" << beta << ": " << e.what();
      throw ConstraintError(os.str());
    }
  }
}

SummaryStats summary_stats(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summary_stats: empty input");
  SummaryStats s{values[0], 0.0, values[0]};
  double sum = 0.0;
  for (double v : values) {
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    sum += v;
  }
  s.mean = std::clamp(sum / static_cast<double>(values.size()), s.min, s.max);
  return s;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

std::vector<double> default_beta_grid(double gamma0) {
  constexpr int kPoints = 10;
  const double lo = 0.1 * gamma0 / 2.0;
  const double hi = 0.9 * gamma0 / 2.0;
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) grid[i] = lo + (hi - lo) * i / (kPoints - 1);
  return grid;
}

std::vector<ExperimentConfig> builtin_cases(std::uint64_t master_seed) {
  struct Row {
    double gamma_x, gamma_y, shape_x, shape_y, gamma0;
    std::size_t n;
  };
  static constexpr Row kRows[] = {
      {2.0, 2.0, 1.2, 1.4, 0.2, 10000},   {1.0, 2.0, 0.5, 0.5, 0.3, 10000},
      {1.0, 2.0, 1.5, 1.5, 0.3, 10000},   {0.5, 0.476, 1.0, 1.0, 0.1, 10000},
      {0.5, 0.4, 1.0, 1.0, 0.1, 10000},   {0.5, 0.4, 1.0, 1.0, 0.1, 50000},
  };
  std::vector<ExperimentConfig> out;
  int id = 1;
  for (const auto& row : kRows) {
    out.push_back(ExperimentConfig{
        .case_id = std::to_string(id++),
        .cm = {TailModel::log_gamma(row.gamma_x, row.shape_x),
               TailModel::log_gamma(row.gamma_y, row.shape_y)},
        .n = row.n,
        .beta_grid = default_beta_grid(row.gamma0),
        .gamma0 = row.gamma0,
        .c = std::nullopt,
        .replications = 50,
        .master_seed = master_seed,
    });
  }
  return out;
}

SweepSummary summarize(std::string case_id, double gamma_x, std::vector<ReplicationRecord> records) {
  SweepSummary summary;
  summary.case_id = std::move(case_id);
  summary.gamma_x = gamma_x;
  summary.records = std::move(records);
  if (summary.records.empty()) return summary;

  double censor_sum = 0.0;
  std::size_t begin = 0;
  while (begin < summary.records.size()) {
    std::size_t end = begin;
    const std::size_t index = summary.records[begin].beta_index;
    std::vector<double> errors;
    BetaSummary row;
    row.beta = summary.records[begin].beta;
    while (end < summary.records.size() && summary.records[end].beta_index == index) {
      const auto& rec = summary.records[end];
      errors.push_back(rec.relative_error);
      row.truncated_by_s += rec.truncated_by_s;
      row.truncated_by_h += rec.truncated_by_h;
      censor_sum += rec.censor_fraction;
      ++end;
    }
    row.relative_error = summary_stats(errors);
    row.median_relative_error = median(std::move(errors));
    summary.per_beta.push_back(row);
    begin = end;
  }
  summary.mean_censor_rate = censor_sum / static_cast<double>(summary.records.size());
  return summary;
}

SweepSummary run_case(const ExperimentConfig& config, int threads) {
  config.validate();
  const std::size_t reps = config.replications;
  const std::size_t total = config.beta_grid.size() * reps;
  const double gamma_x = config.cm.data.gamma();
  const std::uint64_t case_key = hash_label(config.case_id);

  std::vector<TuningParams> tunings;
  for (double beta : config.beta_grid) {
    tunings.push_back(derive_tuning(config.n, beta, config.gamma0, config.c));
  }

  std::vector<ReplicationRecord> records(total);
  std::exception_ptr failure;
  const int team = threads > 0 ? threads : omp_get_max_threads();
  const long long count = static_cast<long long>(total);

#pragma omp parallel for num_threads(team) schedule(dynamic)
  for (long long item = 0; item < count; ++item) {
    const std::size_t b = static_cast<std::size_t>(item) / reps;
    const std::size_t r = static_cast<std::size_t>(item) % reps;
    try {
      RandomStream rng(derive_seed({config.master_seed, case_key, b, r}));
      const auto sample = simulate_censored(config.cm, config.n, rng);
      const auto stats = omp::tail_statistics(sample.z(), sample.delta(), tunings[b].t, 1);
      const auto report = report_from_statistics(stats, tunings[b]);
      auto& rec = records[static_cast<std::size_t>(item)];
      rec.case_id = config.case_id;
      rec.beta = config.beta_grid[b];
      rec.beta_index = b;
      rec.replication = r;
      rec.gamma_x_hat = report.gamma_x_hat;
      rec.relative_error = std::abs(report.gamma_x_hat - gamma_x) / gamma_x;
      rec.truncated_by_s = report.truncated_by_s;
      rec.truncated_by_h = report.truncated_by_h;
      rec.censor_fraction = sample.censor_fraction();
    } catch (...) {
#pragma omp critical(ctail_run_case_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(config.case_id, gamma_x, std::move(records));
}

}  // namespace ctail
