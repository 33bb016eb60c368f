#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace ctail {

// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Stable 64-bit hash of a label (FNV-1a followed by mix64).
std::uint64_t hash_label(std::string_view label) noexcept;

// Seed for an independent stream identified by a key path, e.g.
// {master_seed, hash_label(case_id), beta_index, replication}. Appending or
// changing one key component never perturbs streams with other keys.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys) noexcept;

// Random source owned by one thread. mt19937_64 output is fixed by the C++
// standard, and the variate transforms below are implemented here rather than
// through <random> distributions, so draws are reproducible across platforms.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open();

  // Standard normal (Marsaglia polar method).
  double normal();

  // Gamma variate with the given shape and unit rate. Marsaglia–Tsang
  // squeeze for shape >= 1, boosted by U^(1/shape) below 1, and the exact
  // exponential inverse transform at shape == 1.
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ctail
