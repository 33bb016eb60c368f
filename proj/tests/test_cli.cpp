#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ctail/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" CTAIL_CLI_PATH "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ctail_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("estimate with explicit threshold matches hand evaluation") {
  const auto dir = scratch_dir("estimate");
  const double e = std::exp(1.0);
  std::ostringstream data;
  data.precision(17);
  data << "z,delta\n" << 2 * e << ",1\n1,1\n" << 2 * e * e << ",1\n";
  write_file(dir / "data.csv", data.str());
  const auto r = run_cli("estimate --input " + (dir / "data.csv").string() + " --t 2 --s 0.1 --hn 0.5");
  REQUIRE(r.exit_code == 0);
  const auto j = ctail::io::Json::parse(r.output);
  CHECK(j["rho_hat"].get<double>() == 1.0);
  CHECK(j["zeta_hat"].get<double>() == Catch::Approx(1.5).epsilon(1e-14));
  CHECK(j["gamma_x_hat"].get<double>() == Catch::Approx(1.5).epsilon(1e-14));
  CHECK(j["truncated_by_s"] == false);
  CHECK(j["truncated_by_h"] == false);
  CHECK(j["tuning"]["t"].get<double>() == 2.0);
  CHECK(j["tuning"]["s"].get<double>() == 0.1);
  CHECK(j["tuning"]["h"].get<double>() == 0.5);

  const auto partial = run_cli("estimate --input " + (dir / "data.csv").string() + " --t 2");
  CHECK(partial.exit_code == 2);
}

TEST_CASE("estimate error paths map to exit codes") {
  const auto dir = scratch_dir("estimate_errors");
  write_file(dir / "empty.csv", "");
  const auto empty = run_cli("estimate --input " + (dir / "empty.csv").string() + " --beta 0.05 --gamma0 0.2");
  CHECK(empty.exit_code == 1);
  CHECK_THAT(empty.output, Catch::Matchers::ContainsSubstring("line 1"));

  write_file(dir / "bad.csv", "z,delta\n1,1\n2,x\n");
  const auto bad = run_cli("estimate --input " + (dir / "bad.csv").string() + " --beta 0.05 --gamma0 0.2");
  CHECK(bad.exit_code == 1);
  CHECK_THAT(bad.output, Catch::Matchers::ContainsSubstring("line 3"));

  const auto missing = run_cli("estimate --input " + (dir / "nope.csv").string() + " --beta 0.05");
  CHECK(missing.exit_code == 1);

  std::string rows = "z,delta\n";
  for (int i = 1; i <= 100; ++i) rows += std::to_string(i) + ",1\n";
  write_file(dir / "ok.csv", rows);
  const auto constraint = run_cli("estimate --input " + (dir / "ok.csv").string() + " --beta 0.15 --gamma0 0.2");
  CHECK(constraint.exit_code == 2);
  CHECK_THAT(constraint.output, Catch::Matchers::ContainsSubstring("beta < gamma0/2"));

  const auto fine = run_cli("estimate --input " + (dir / "ok.csv").string() + " --beta 0.05 --gamma0 0.2");
  CHECK(fine.exit_code == 0);
  CHECK(fine.output.find("nan") == std::string::npos);
  CHECK(fine.output.find("inf") == std::string::npos);
}

TEST_CASE("simulate rejects unknown cases and unwritable outputs") {
  const auto dir = scratch_dir("simulate_errors");
  CHECK(run_cli("simulate --case 9 --out " + dir.string()).exit_code == 2);
  CHECK(run_cli("simulate --case 0 --out " + dir.string()).exit_code == 2);
  CHECK(run_cli("simulate --out " + dir.string()).exit_code == 2);
  write_file(dir / "blocker", "x");
  const auto r = run_cli("simulate --case 1 --reps 1 --n 200 --out " + (dir / "blocker" / "sub").string());
  CHECK(r.exit_code == 1);
}

TEST_CASE("simulate is byte-identical for a fixed seed") {
  const auto a = scratch_dir("simulate_a");
  const auto b = scratch_dir("simulate_b");
  REQUIRE(run_cli("simulate --case 1 --seed 7 --threads 1 --out " + a.string()).exit_code == 0);
  const auto r = run_cli("simulate --case 1 --seed 7 --out " + b.string());
  REQUIRE(r.exit_code == 0);
  CHECK_THAT(r.output, Catch::Matchers::ContainsSubstring("mean censor rate"));
  for (const char* name : {"case1_results.csv", "case1_summary.json"}) {
    const auto left = slurp(a / name);
    CHECK(!left.empty());
    CHECK(left == slurp(b / name));
  }
  const auto csv = slurp(a / "case1_results.csv");
  CHECK(csv.rfind(std::string(ctail::io::kResultHeader) + "\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  std::istringstream in(csv);
  CHECK(ctail::io::read_results_csv(in).size() == 500);
}

TEST_CASE("simulate case 5 reproduces the censor rate") {
  const auto dir = scratch_dir("simulate_case5");
  REQUIRE(run_cli("simulate --case 5 --out " + dir.string()).exit_code == 0);
  const auto j = ctail::io::Json::parse(slurp(dir / "case5_summary.json"));
  const double rate = j["mean_censor_rate"].get<double>();
  CHECK(rate >= 0.54);
  CHECK(rate <= 0.57);
}

TEST_CASE("output directory defaults to the environment override") {
  const auto dir = scratch_dir("env_out");
  const auto r = run_cli("simulate --case 4 --reps 1 --n 500", "CTAIL_OUT_DIR='" + dir.string() + "'");
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(dir / "case4_results.csv"));
  CHECK(fs::exists(dir / "case4_summary.json"));
}

TEST_CASE("simulate accepts a JSON config") {
  const auto dir = scratch_dir("config");
  write_file(dir / "config.json", R"({"case_id": "custom", "n": 800, "gamma0": 0.3, "replications": 2,
    "beta_grid": [0.05, 0.1],
    "data": {"kind": "pareto", "gamma": 1.0}, "censor": {"kind": "pareto", "gamma": 2.0}})");
  const auto r = run_cli("simulate --config " + (dir / "config.json").string() + " --out " + dir.string());
  REQUIRE(r.exit_code == 0);
  std::istringstream in(slurp(dir / "casecustom_results.csv"));
  CHECK(ctail::io::read_results_csv(in).size() == 4);
  write_file(dir / "broken.json", "{");
  CHECK(run_cli("simulate --config " + (dir / "broken.json").string() + " --out " + dir.string()).exit_code == 1);
}

TEST_CASE("sweep over n shows decreasing median error") {
  const auto dir = scratch_dir("sweep");
  const auto r = run_cli("sweep --case 2 --n 2500 10000 40000 --beta 0.1 --out " + dir.string());
  REQUIRE(r.exit_code == 0);
  const auto j = ctail::io::Json::parse(slurp(dir / "sweep_case2_summary.json"));
  REQUIRE(j["runs"].size() == 3);
  std::vector<double> medians;
  for (const auto& run : j["runs"]) {
    REQUIRE(run["per_beta"].size() == 1);
    medians.push_back(run["per_beta"][0]["median_relative_error"].get<double>());
  }
  INFO("medians " << medians[0] << " " << medians[1] << " " << medians[2]);
  CHECK(medians[0] > medians[1]);
  CHECK(medians[1] > medians[2]);
  std::istringstream in(slurp(dir / "sweep_case2_results.csv"));
  CHECK(ctail::io::read_results_csv(in).size() == 150);
}

TEST_CASE("sweep rejects a beta grid touching gamma0/2") {
  const auto dir = scratch_dir("sweep_bad");
  const auto r = run_cli("sweep --case 1 --beta 0.05 0.1 --out " + dir.string());
  CHECK(r.exit_code == 2);
  CHECK_THAT(r.output, Catch::Matchers::ContainsSubstring("beta < gamma0/2"));
  CHECK_FALSE(fs::exists(dir / "sweep_case1_results.csv"));
}

TEST_CASE("single-n single-beta sweep matches simulate") {
  const auto a = scratch_dir("degenerate_sim");
  const auto b = scratch_dir("degenerate_sweep");
  const std::string args = "--case 3 --n 3000 --beta 0.1 --reps 5 --seed 11";
  REQUIRE(run_cli("simulate " + args + " --out " + a.string()).exit_code == 0);
  REQUIRE(run_cli("sweep " + args + " --out " + b.string()).exit_code == 0);
  CHECK(slurp(a / "case3_results.csv") == slurp(b / "sweep_case3_results.csv"));
  const auto sim = ctail::io::Json::parse(slurp(a / "case3_summary.json"));
  const auto sweep = ctail::io::Json::parse(slurp(b / "sweep_case3_summary.json"));
  REQUIRE(sweep["runs"].size() == 1);
  CHECK(sweep["runs"][0] == sim);
}
