#include "ctail/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>

#include "ctail/errors.hpp"

namespace ctail::io {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_size(std::string_view text, std::size_t& out) {
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_flag(std::string_view text, bool& out) {
  if (text == "0") {
    out = false;
    return true;
  }
  if (text == "1") {
    out = true;
    return true;
  }
  return false;
}

TailModel model_from_json(const Json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_object()) {
    throw ParseError(std::string("config: missing object '") + field + "'", 0);
  }
  const Json& m = j[field];
  const std::string kind = m.value("kind", "log_gamma");
  const double gamma = m.at("gamma").get<double>();
  if (kind == "pareto") return TailModel::pareto(gamma, m.value("support_min", 1.0));
  if (kind == "log_gamma") return TailModel::log_gamma(gamma, m.value("shape", 1.0));
  throw ParseError("config: unknown model kind '" + kind + "'", 0);
}

Json model_to_json(const TailModel& m) {
  Json j;
  j["kind"] = m.kind() == TailKind::Pareto ? "pareto" : "log_gamma";
  j["gamma"] = m.gamma();
  j["shape"] = m.shape();
  j["support_min"] = m.support_min();
  return j;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::A3: return "A3";
    case Regime::NoA3: return "NoA3";
    case Regime::Manual: return "manual";
  }
  return "unknown";
}

}  // namespace

CensoredSample parse_data(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<double> z;
  std::vector<std::uint8_t> delta;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = strip_cr(line);
    if (text.empty()) continue;
    if (!have_header) {
      if (text != "z,delta") throw ParseError("expected header \"z,delta\"", line_no);
      have_header = true;
      continue;
    }
    const auto fields = split(text, ',');
    if (fields.size() != 2) throw ParseError("expected 2 fields, found " + std::to_string(fields.size()), line_no);
    double value = 0.0;
    if (!parse_double(fields[0], value) || !std::isfinite(value) || !(value > 0.0)) {
      throw ParseError("z must be a finite number > 0, got \"" + std::string(fields[0]) + "\"", line_no);
    }
    bool flag = false;
    if (!parse_flag(fields[1], flag)) {
      throw ParseError("delta must be 0 or 1, got \"" + std::string(fields[1]) + "\"", line_no);
    }
    z.push_back(value);
    delta.push_back(flag ? 1 : 0);
  }
  if (!have_header) throw ParseError("empty input: missing header \"z,delta\"", line_no + 1);
  if (z.empty()) throw ParseError("no data rows", line_no + 1);
  return CensoredSample(std::move(z), std::move(delta));
}

CensoredSample read_data_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_data(in);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_results_csv(std::ostream& out, const std::vector<ReplicationRecord>& records) {
  out << kResultHeader << '\n';
  for (const auto& r : records) {
    out << r.case_id << ',' << format_double(r.beta) << ',' << r.replication << ','
        << format_double(r.gamma_x_hat) << ',' << format_double(r.relative_error) << ','
        << (r.truncated_by_s ? 1 : 0) << ',' << (r.truncated_by_h ? 1 : 0) << ','
        << format_double(r.censor_fraction) << '\n';
  }
}

std::vector<ReplicationRecord> read_results_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty input: missing header", 1);
  ++line_no;
  if (strip_cr(line) != kResultHeader) throw ParseError("unexpected header", line_no);

  std::map<std::string, std::vector<double>, std::less<>> betas_seen;
  std::vector<ReplicationRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = strip_cr(line);
    if (text.empty()) continue;
    const auto f = split(text, ',');
    if (f.size() != 8) throw ParseError("expected 8 fields, found " + std::to_string(f.size()), line_no);
    ReplicationRecord r;
    r.case_id = std::string(f[0]);
    bool ok = parse_double(f[1], r.beta) && parse_size(f[2], r.replication) &&
              parse_double(f[3], r.gamma_x_hat) && parse_double(f[4], r.relative_error) &&
              parse_flag(f[5], r.truncated_by_s) && parse_flag(f[6], r.truncated_by_h) &&
              parse_double(f[7], r.censor_fraction);
    if (!ok) throw ParseError("malformed result row", line_no);
    auto& seen = betas_seen[r.case_id];
    std::size_t index = 0;
    while (index < seen.size() && seen[index] != r.beta) ++index;
    if (index == seen.size()) seen.push_back(r.beta);
    r.beta_index = index;
    out.push_back(std::move(r));
  }
  return out;
}

Json report_to_json(const EstimateReport& report) {
  Json j;
  j["rho_hat"] = report.rho_hat;
  j["zeta_hat"] = report.zeta_hat;
  j["gamma_x_hat"] = report.gamma_x_hat;
  j["p_at_t"] = report.p_at_t;
  j["q_at_t"] = report.q_at_t;
  j["exceedance_count"] = report.exceedance_count;
  j["truncated_by_s"] = report.truncated_by_s;
  j["truncated_by_h"] = report.truncated_by_h;
  Json t;
  t["regime"] = regime_name(report.tuning.regime);
  t["n"] = report.tuning.n;
  t["t"] = report.tuning.t;
  t["s"] = report.tuning.s;
  t["h"] = report.tuning.h;
  if (report.tuning.regime != Regime::Manual) {
    t["beta"] = report.tuning.beta;
    t["c"] = report.tuning.c;
  }
  if (report.tuning.gamma0) t["gamma0"] = *report.tuning.gamma0;
  j["tuning"] = t;
  return j;
}

Json config_to_json(const ExperimentConfig& config) {
  Json j;
  j["case_id"] = config.case_id;
  j["data"] = model_to_json(config.cm.data);
  j["censor"] = model_to_json(config.cm.censor);
  j["n"] = config.n;
  j["beta_grid"] = config.beta_grid;
  j["gamma0"] = config.gamma0;
  j["c"] = config.c ? Json(*config.c) : Json(nullptr);
  j["replications"] = config.replications;
  j["master_seed"] = config.master_seed;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ParseError("config: expected a JSON object", 0);
    const double gamma0 = j.at("gamma0").get<double>();
    ExperimentConfig config{
        .case_id = j.value("case_id", std::string("custom")),
        .cm = {model_from_json(j, "data"), model_from_json(j, "censor")},
        .n = j.at("n").get<std::size_t>(),
        .beta_grid = j.contains("beta_grid") ? j["beta_grid"].get<std::vector<double>>()
                                             : default_beta_grid(gamma0),
        .gamma0 = gamma0,
        .c = std::nullopt,
        .replications = j.value("replications", std::size_t{50}),
        .master_seed = j.value("master_seed", kDefaultSeed),
    };
    if (j.contains("c") && !j["c"].is_null()) config.c = j["c"].get<double>();
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
}

Json summary_to_json(const ExperimentConfig& config, const SweepSummary& summary) {
  Json j;
  j["case_id"] = summary.case_id;
  j["config"] = config_to_json(config);
  j["seed"] = config.master_seed;
  j["gamma_x"] = summary.gamma_x;
  j["gamma_z"] = config.cm.gamma_z();
  j["expected_censor_rate"] = expected_censor_rate(config.cm);
  j["mean_censor_rate"] = summary.mean_censor_rate;
  Json rows = Json::array();
  for (std::size_t b = 0; b < summary.per_beta.size(); ++b) {
    const auto& row = summary.per_beta[b];
    const auto tuning = derive_tuning(config.n, row.beta, config.gamma0, config.c);
    Json r;
    r["beta"] = row.beta;
    r["t"] = tuning.t;
    r["s"] = tuning.s;
    r["h"] = tuning.h;
    r["c"] = tuning.c;
    r["min_relative_error"] = row.relative_error.min;
    r["mean_relative_error"] = row.relative_error.mean;
    r["median_relative_error"] = row.median_relative_error;
    r["max_relative_error"] = row.relative_error.max;
    r["truncated_by_s"] = row.truncated_by_s;
    r["truncated_by_h"] = row.truncated_by_h;
    rows.push_back(r);
  }
  j["per_beta"] = rows;
  return j;
}

}  // namespace ctail::io
