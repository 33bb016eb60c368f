// ctail: censored heavy-tail index estimation and simulation campaigns.
//
//   ctail estimate --input data.csv --beta 0.05 --gamma0 0.2
//   ctail simulate --case 1 --seed 7 --out results/
//   ctail sweep --case 2 --n 2500 10000 40000 --beta 0.1
//
// Exit codes: 0 success, 1 I/O or parse error, 2 usage or constraint error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctail/errors.hpp"
#include "ctail/estimators.hpp"
#include "ctail/io.hpp"
#include "ctail/montecarlo.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

// Raised for usage problems detected after CLI11 parsing (unknown case id, ...).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CampaignOptions {
  std::optional<int> case_id;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string out_dir;
  std::vector<std::size_t> n_values;
  std::vector<double> betas;
  std::optional<std::size_t> reps;
};

std::string default_out_dir() {
  if (const char* env = std::getenv("CTAIL_OUT_DIR"); env && *env) return env;
  return "results";
}

ctail::ExperimentConfig base_config(const CampaignOptions& opt) {
  ctail::ExperimentConfig config = [&] {
    if (!opt.config_path.empty()) {
      std::ifstream in(opt.config_path);
      if (!in) throw std::runtime_error("cannot open " + opt.config_path);
      ctail::io::Json j;
      try {
        j = ctail::io::Json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ctail::ParseError(std::string("config: ") + e.what(), 0);
      }
      return ctail::io::config_from_json(j);
    }
    if (!opt.case_id || *opt.case_id < 1 || *opt.case_id > 6) {
      throw UsageError("unknown case id; expected 1-6");
    }
    return ctail::builtin_cases()[static_cast<std::size_t>(*opt.case_id - 1)];
  }();
  if (opt.seed) config.master_seed = *opt.seed;
  if (opt.reps) config.replications = *opt.reps;
  if (!opt.betas.empty()) config.beta_grid = opt.betas;
  return config;
}

void print_table(const ctail::ExperimentConfig& config, const ctail::SweepSummary& summary) {
  std::printf("case %s  n=%zu  replications=%zu  gamma_x=%g\n", summary.case_id.c_str(), config.n,
              config.replications, summary.gamma_x);
  std::printf("%10s %12s %12s %12s %12s %8s %8s\n", "beta", "min", "mean", "median", "max",
              "trunc_s", "trunc_h");
  for (const auto& row : summary.per_beta) {
    std::printf("%10.6f %12.6f %12.6f %12.6f %12.6f %8zu %8zu\n", row.beta, row.relative_error.min,
                row.relative_error.mean, row.median_relative_error, row.relative_error.max,
                row.truncated_by_s, row.truncated_by_h);
  }
  std::printf("mean censor rate: %.6f\n", summary.mean_censor_rate);
}

void write_outputs(const fs::path& dir, const std::string& stem,
                   const std::vector<ctail::ReplicationRecord>& records,
                   const ctail::io::Json& summary) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  {
    std::ofstream csv(dir / (stem + "_results.csv"), std::ios::binary);
    ctail::io::write_results_csv(csv, records);
    if (!csv) throw std::runtime_error("cannot write " + (dir / (stem + "_results.csv")).string());
  }
  std::ofstream json(dir / (stem + "_summary.json"), std::ios::binary);
  json << summary.dump(2) << '\n';
  if (!json) throw std::runtime_error("cannot write " + (dir / (stem + "_summary.json")).string());
}

int cmd_simulate(const CampaignOptions& opt) {
  auto config = base_config(opt);
  if (!opt.n_values.empty()) config.n = opt.n_values.front();
  const auto summary = ctail::run_case(config, opt.threads);
  print_table(config, summary);
  write_outputs(opt.out_dir, "case" + config.case_id, summary.records,
                ctail::io::summary_to_json(config, summary));
  return 0;
}

int cmd_sweep(const CampaignOptions& opt) {
  const auto base = base_config(opt);
  std::vector<std::size_t> n_values = opt.n_values;
  if (n_values.empty()) n_values.push_back(base.n);

  std::vector<ctail::ExperimentConfig> configs;
  for (std::size_t n : n_values) {
    auto config = base;
    config.n = n;
    if (n_values.size() > 1) config.case_id = base.case_id + "-n" + std::to_string(n);
    config.validate();
    configs.push_back(std::move(config));
  }

  std::vector<ctail::ReplicationRecord> records;
  ctail::io::Json runs = ctail::io::Json::array();
  for (const auto& config : configs) {
    const auto summary = ctail::run_case(config, opt.threads);
    print_table(config, summary);
    records.insert(records.end(), summary.records.begin(), summary.records.end());
    runs.push_back(ctail::io::summary_to_json(config, summary));
  }
  ctail::io::Json j;
  j["case_id"] = base.case_id;
  j["seed"] = base.master_seed;
  j["n_values"] = n_values;
  j["runs"] = runs;
  write_outputs(opt.out_dir, "sweep_case" + base.case_id, records, j);
  return 0;
}

struct EstimateOptions {
  std::string input;
  std::optional<double> beta;
  std::optional<double> gamma0;
  std::optional<double> c;
  std::optional<double> t;
  std::optional<double> s;
  std::optional<double> h;
};

int cmd_estimate(const EstimateOptions& opt) {
  const auto sample = ctail::io::read_data_file(opt.input);
  ctail::TuningParams tuning;
  if (opt.t || opt.s || opt.h) {
    if (!(opt.t && opt.s && opt.h)) throw UsageError("--t, --s and --hn must be given together");
    tuning = ctail::manual_tuning(sample.size(), *opt.t, *opt.s, *opt.h);
  } else {
    if (!opt.beta) throw UsageError("--beta is required unless --t/--s/--hn are given");
    tuning = ctail::derive_tuning(sample.size(), *opt.beta, opt.gamma0, opt.c);
  }
  const auto report = ctail::estimate_gamma_x(sample, tuning);
  std::cout << ctail::io::report_to_json(report).dump(2) << '\n';
  return 0;
}

void add_campaign_options(CLI::App* cmd, CampaignOptions& opt, bool multi_n) {
  cmd->add_option("--case", opt.case_id, "Built-in case id (1-6)");
  cmd->add_option("--config", opt.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  cmd->add_option("--seed", opt.seed, "Master seed");
  cmd->add_option("--threads", opt.threads, "Worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", opt.out_dir, "Output directory (env CTAIL_OUT_DIR, else ./results)");
  auto* n = cmd->add_option("--n", opt.n_values, multi_n ? "Sample sizes" : "Sample size override");
  if (!multi_n) n->expected(1);
  cmd->add_option("--beta", opt.betas, "Beta grid override");
  cmd->add_option("--reps", opt.reps, "Replications per beta");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail index estimation under random right censoring"};
  app.require_subcommand(1);

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "Estimate gamma_X from a z,delta data file");
  estimate->add_option("--input", est.input, "Data file with header z,delta")->required();
  estimate->add_option("--beta", est.beta, "Threshold exponent beta");
  estimate->add_option("--gamma0", est.gamma0, "Known lower bound gamma0 (selects t = n^beta)");
  estimate->add_option("--c", est.c, "Floor exponent c, s = n^-c");
  estimate->add_option("--t", est.t, "Explicit threshold t (with --s, --hn)");
  estimate->add_option("--s", est.s, "Explicit floor s (with --t, --hn)");
  estimate->add_option("--hn", est.h, "Explicit truncation level H_n (with --t, --s)");

  CampaignOptions sim;
  sim.out_dir = default_out_dir();
  auto* simulate = app.add_subcommand("simulate", "Run one simulation case");
  add_campaign_options(simulate, sim, false);

  CampaignOptions sweep_opt;
  sweep_opt.out_dir = default_out_dir();
  auto* sweep = app.add_subcommand("sweep", "Run a case over several sample sizes and betas");
  add_campaign_options(sweep, sweep_opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*estimate) return cmd_estimate(est);
    if (*simulate) return cmd_simulate(sim);
    if (*sweep) return cmd_sweep(sweep_opt);
  } catch (const ctail::ConstraintError& e) {
    std::cerr << "constraint violated: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ctail::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
