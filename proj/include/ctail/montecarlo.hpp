#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctail/distributions.hpp"

namespace ctail {

// One simulation campaign: for every beta in beta_grid, `replications`
// independent samples of size n are drawn from cm and passed to the
// estimator with t = n^beta (A3 regime with the given gamma0).
struct ExperimentConfig {
  std::string case_id;
  CensorModel cm;
  std::size_t n = 0;
  std::vector<double> beta_grid;
  double gamma0 = 0.0;
  std::optional<double> c;
  std::size_t replications = 50;
  std::uint64_t master_seed = 0;

  // Throws ConstraintError: empty or non-increasing grid, zero replications,
  // or a beta with beta ≥ gamma0/2.
  void validate() const;
};

struct ReplicationRecord {
  std::string case_id;
  double beta = 0.0;
  std::size_t beta_index = 0;
  std::size_t replication = 0;
  double gamma_x_hat = 0.0;
  double relative_error = 0.0;  // |gamma_x_hat - gamma_x| / gamma_x
  bool truncated_by_s = false;
  bool truncated_by_h = false;
  double censor_fraction = 0.0;

  bool operator==(const ReplicationRecord&) const = default;
};

struct SummaryStats {
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

struct BetaSummary {
  double beta = 0.0;
  SummaryStats relative_error;
  double median_relative_error = 0.0;
  std::size_t truncated_by_s = 0;
  std::size_t truncated_by_h = 0;
};

struct SweepSummary {
  std::string case_id;
  double gamma_x = 0.0;
  std::vector<ReplicationRecord> records;  // beta-major, then replication
  std::vector<BetaSummary> per_beta;
  double mean_censor_rate = 0.0;
};

// Exact min / mean / max; mean is clamped into [min, max]. Throws
// std::invalid_argument on empty input.
SummaryStats summary_stats(std::span<const double> values);
double median(std::vector<double> values);

// Ten evenly spaced points on [0.1 * gamma0/2, 0.9 * gamma0/2].
std::vector<double> default_beta_grid(double gamma0);

inline constexpr std::uint64_t kDefaultSeed = 20190601;

// The six parameter cases (log-gamma data and censoring laws); n = 10000
// for cases 1-5 and 50000 for case 6, 50 replications each.
std::vector<ExperimentConfig> builtin_cases(std::uint64_t master_seed = kDefaultSeed);

// Runs every (beta, replication) unit, in parallel when threads != 1
// (threads <= 0: OpenMP default). Replication r at beta index b draws from
// the stream derive_seed({master_seed, hash_label(case_id), b, r}), and the
// records are aggregated in index order, so the result does not depend on
// the thread count or scheduling.
SweepSummary run_case(const ExperimentConfig& config, int threads = 0);

// Folds a record buffer (beta-major) into per-beta summaries and the mean
// censor rate. Exposed for round-trip checks on serialized tables.
SweepSummary summarize(std::string case_id, double gamma_x, std::vector<ReplicationRecord> records);

}  // namespace ctail
