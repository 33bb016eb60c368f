#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace ctail {

// Sufficient statistics of a censored sample above a threshold t:
//   exceedances            #{i : z_i >= t}
//   uncensored_exceedances #{i : z_i >= t, delta_i = 1}
//   log_excess_sum         sum over exceedances of log(z_i / t)
struct TailStatistics {
  std::size_t n = 0;
  std::size_t exceedances = 0;
  std::size_t uncensored_exceedances = 0;
  double log_excess_sum = 0.0;
};

namespace serial {

// Reference implementation: one pass, log sum by recursive pairwise summation.
TailStatistics tail_statistics(std::span<const double> z, std::span<const std::uint8_t> delta,
                               double t);

}  // namespace serial

namespace omp {

// Fixed-size blocks are reduced in parallel and their partial sums combined
// pairwise in block order. The block layout does not depend on the thread
// count, so the result is bit-identical for every `threads` value.
// threads <= 0 uses the OpenMP default.
TailStatistics tail_statistics(std::span<const double> z, std::span<const std::uint8_t> delta,
                               double t, int threads = 0);

inline constexpr std::size_t kBlockSize = 8192;

}  // namespace omp

// Pairwise sum of log(z_i / t) * 1{z_i >= t} over z[lo, hi).
double pairwise_log_excess(std::span<const double> z, double t, std::size_t lo, std::size_t hi);

}  // namespace ctail
