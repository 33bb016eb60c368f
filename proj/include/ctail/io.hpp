#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctail/distributions.hpp"
#include "ctail/estimators.hpp"
#include "ctail/montecarlo.hpp"

namespace ctail::io {

using Json = nlohmann::ordered_json;

// Data files: a "z,delta" header followed by one "z,delta" row per
// observation, z > 0 and delta in {0, 1}. Blank lines are skipped and a
// trailing CR is tolerated. Malformed input throws ParseError with the
// 1-based line number.
CensoredSample parse_data(std::istream& in);
CensoredSample read_data_file(const std::filesystem::path& path);

// Doubles in CSV output use 17 significant digits ("%.17g"), which round-trips exactly.
std::string format_double(double x);

inline constexpr const char* kResultHeader =
    "case_id,beta,replication,gamma_x_hat,relative_error,truncated_by_s,truncated_by_h,"
    "censor_fraction";

void write_results_csv(std::ostream& out, const std::vector<ReplicationRecord>& records);
// beta_index is rebuilt from the order in which each case's betas first appear.
std::vector<ReplicationRecord> read_results_csv(std::istream& in);

Json report_to_json(const EstimateReport& report);
Json config_to_json(const ExperimentConfig& config);
// Schema of config_to_json; beta_grid, c and master_seed are optional.
// Throws ParseError on missing or ill-typed fields.
ExperimentConfig config_from_json(const Json& j);
Json summary_to_json(const ExperimentConfig& config, const SweepSummary& summary);

}  // namespace ctail::io
