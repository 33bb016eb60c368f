// Serial reference vs OpenMP tail-statistics kernel, and the replication
// harness at one thread vs all threads.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "ctail/distributions.hpp"
#include "ctail/kernels.hpp"
#include "ctail/montecarlo.hpp"
#include "ctail/random.hpp"

namespace {

template <typename F>
double time_ms(F&& f, int repeats) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) f();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 10'000'000;
  const int max_threads = omp_get_max_threads();

  ctail::RandomStream rng(1);
  const ctail::CensorModel cm{ctail::TailModel::pareto(1.0), ctail::TailModel::pareto(2.0)};
  const auto sample = ctail::simulate_censored(cm, n, rng);
  const double t = 1.5;

  volatile double sink = 0.0;
  const double serial_ms = time_ms(
      [&] { sink = sink + ctail::serial::tail_statistics(sample.z(), sample.delta(), t).log_excess_sum; }, 5);
  const double omp_ms = time_ms(
      [&] { sink = sink + ctail::omp::tail_statistics(sample.z(), sample.delta(), t).log_excess_sum; }, 5);
  std::printf("tail_statistics n=%zu  serial %.2f ms  omp(%d threads) %.2f ms  speedup %.2fx\n", n,
              serial_ms, max_threads, omp_ms, serial_ms / omp_ms);

  auto config = ctail::builtin_cases()[0];
  config.replications = 10;
  const double one_ms = time_ms([&] { ctail::run_case(config, 1); }, 1);
  const double all_ms = time_ms([&] { ctail::run_case(config, max_threads); }, 1);
  std::printf("run_case case 1 (10 reps x %zu betas)  1 thread %.1f ms  %d threads %.1f ms  speedup %.2fx\n",
              config.beta_grid.size(), one_ms, max_threads, all_ms, one_ms / all_ms);
  return 0;
}
