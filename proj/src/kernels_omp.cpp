#include <omp.h>

#include <algorithm>
#include <vector>

#include "ctail/kernels.hpp"

namespace ctail::omp {
namespace {

double pairwise(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise(v, lo, mid) + pairwise(v, mid, hi);
}

}  // namespace

TailStatistics tail_statistics(std::span<const double> z, std::span<const std::uint8_t> delta,
                               double t, int threads) {
  TailStatistics stats;
  stats.n = z.size();
  if (z.empty()) return stats;

  const std::size_t blocks = (z.size() + kBlockSize - 1) / kBlockSize;
  std::vector<double> partial(blocks, 0.0);
  std::size_t exceed = 0;
  std::size_t uncensored = 0;
  const int team = threads > 0 ? threads : omp_get_max_threads();
  const long long nblocks = static_cast<long long>(blocks);

#pragma omp parallel for num_threads(team) if (blocks > 1) schedule(static) \
    reduction(+ : exceed, uncensored)
  for (long long b = 0; b < nblocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlockSize;
    const std::size_t hi = std::min(z.size(), lo + kBlockSize);
    for (std::size_t i = lo; i < hi; ++i) {
      if (z[i] >= t) {
        ++exceed;
        uncensored += delta[i];
      }
    }
    partial[static_cast<std::size_t>(b)] = pairwise_log_excess(z, t, lo, hi);
  }

  stats.exceedances = exceed;
  stats.uncensored_exceedances = uncensored;
  stats.log_excess_sum = pairwise(partial, 0, partial.size());
  return stats;
}

}  // namespace ctail::omp
