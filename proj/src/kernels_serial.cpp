#include <cmath>

#include "ctail/kernels.hpp"

namespace ctail {

double pairwise_log_excess(std::span<const double> z, double t, std::size_t lo, std::size_t hi) {
  constexpr std::size_t kLeaf = 64;
  if (hi - lo <= kLeaf) {
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      if (z[i] >= t) sum += std::log(z[i] / t);
    }
    return sum;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_log_excess(z, t, lo, mid) + pairwise_log_excess(z, t, mid, hi);
}

namespace serial {

TailStatistics tail_statistics(std::span<const double> z, std::span<const std::uint8_t> delta,
                               double t) {
  TailStatistics stats;
  stats.n = z.size();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] >= t) {
      ++stats.exceedances;
      stats.uncensored_exceedances += delta[i];
    }
  }
  stats.log_excess_sum = z.empty() ? 0.0 : pairwise_log_excess(z, t, 0, z.size());
  return stats;
}

}  // namespace serial
}  // namespace ctail
