#pragma once

#include <cstdint>
#include <random>

namespace holder {

/// Seed of the `index`-th independent stream under `master` (SplitMix64
/// finalizer), so parallel runs never share a generator.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// mt19937_64 with explicitly specified transforms, so draws are identical
/// across standard libraries (the std:: distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal by Box-Muller; the second variate is cached.
  double normal();
  /// Gamma(shape, scale) by Marsaglia-Tsang, boosted for shape < 1.
  double gamma(double shape, double scale);
  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace holder
