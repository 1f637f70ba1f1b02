#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gk/geometry.hpp"

namespace gk {

/// Seeded generator with a fully specified output stream: std::mt19937_64
/// (whose sequence is fixed by the C++ standard) and a 53-bit mantissa
/// conversion to [0, 1). std::uniform_real_distribution is avoided because
/// its algorithm is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [0, bound).
  int index(int bound) { return static_cast<int>(uniform01() * bound); }

 private:
  std::mt19937_64 engine_;
};

/// Independent stream for sub-task `stream` of a run seeded with `seed`.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

inline constexpr double sample_lo = -0.5;
inline constexpr double sample_hi = 0.5;
/// "Generic" points for negative controls keep every coordinate away from 0.
inline constexpr double generic_lo = 0.3;
inline constexpr double generic_hi = 1.0;

/// `count` points with each coordinate uniform in [lo, hi].
[[nodiscard]] std::vector<std::vector<double>> sample_points(int dim, int count, std::uint64_t seed,
                                                             double lo = sample_lo, double hi = sample_hi);

/// Random combination of the frame vectors with coefficients uniform in [-1, 1].
[[nodiscard]] Vec random_combination(Rng& rng, const std::vector<Vec>& frame);

}  // namespace gk
