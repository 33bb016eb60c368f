#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "ctail/distributions.hpp"
#include "ctail/kernels.hpp"
#include "ctail/random.hpp"

using Catch::Approx;

namespace {

ctail::CensoredSample pareto_sample(std::size_t n, std::uint64_t seed) {
  ctail::RandomStream rng(seed);
  return ctail::simulate_censored({ctail::TailModel::pareto(1.0), ctail::TailModel::pareto(2.0)}, n, rng);
}

}  // namespace

TEST_CASE("OpenMP kernel agrees with the serial reference") {
  for (std::size_t n : {1u, 7u, 64u, 65u, 8191u, 8192u, 8193u, 100000u, 1000003u}) {
    const auto s = pareto_sample(n, n);
    for (double t : {0.5, 1.0, 1.7, 10.0, 1e9}) {
      const auto ref = ctail::serial::tail_statistics(s.z(), s.delta(), t);
      const auto par = ctail::omp::tail_statistics(s.z(), s.delta(), t);
      INFO("n=" << n << " t=" << t);
      CHECK(par.n == ref.n);
      CHECK(par.exceedances == ref.exceedances);
      CHECK(par.uncensored_exceedances == ref.uncensored_exceedances);
      CHECK(par.log_excess_sum == Approx(ref.log_excess_sum).epsilon(1e-13).margin(1e-300));
    }
  }
}

TEST_CASE("OpenMP kernel is bit-identical across thread counts") {
  const auto s = pareto_sample(300000, 42);
  const auto base = ctail::omp::tail_statistics(s.z(), s.delta(), 1.3, 1);
  for (int threads : {2, 3, 4, 8, 16}) {
    const auto other = ctail::omp::tail_statistics(s.z(), s.delta(), 1.3, threads);
    CHECK(other.exceedances == base.exceedances);
    CHECK(other.uncensored_exceedances == base.uncensored_exceedances);
    CHECK(other.log_excess_sum == base.log_excess_sum);
  }
}

TEST_CASE("kernel edge cases") {
  const std::vector<double> z{1.0, 2.0, 3.0, 4.0};
  const std::vector<std::uint8_t> d{1, 0, 1, 1};
  for (auto stats : {ctail::serial::tail_statistics(z, d, 2.0), ctail::omp::tail_statistics(z, d, 2.0)}) {
    CHECK(stats.exceedances == 3);
    CHECK(stats.uncensored_exceedances == 2);
    CHECK(stats.log_excess_sum == Approx(std::log(1.0) + std::log(1.5) + std::log(2.0)));
  }
  const auto none = ctail::omp::tail_statistics(z, d, 5.0);
  CHECK(none.exceedances == 0);
  CHECK(none.log_excess_sum == 0.0);
  const auto empty = ctail::omp::tail_statistics({}, {}, 1.0);
  CHECK(empty.n == 0);
  CHECK(ctail::serial::tail_statistics({}, {}, 1.0).n == 0);
}
