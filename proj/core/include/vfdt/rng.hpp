#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace vfdt {

/// Reproducible random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the conversions to real numbers below
/// are done by hand so they do not depend on library distribution code.
///
///   uniform():  top 53 bits of one draw scaled by 2^-53, in [0, 1)
///   gaussian(): Box-Muller on two uniforms, second variate cached
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gaussian();
  /// Integer in [0, n). n must be > 0.
  std::size_t uniform_index(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace vfdt
