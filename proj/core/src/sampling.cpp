#include "gk/sampling.hpp"

#include <stdexcept>

namespace gk {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
}

std::vector<std::vector<double>> sample_points(int dim, int count, std::uint64_t seed, double lo, double hi) {
  if (dim < 1 || count < 0) throw std::invalid_argument("sample_points: bad dimension or count");
  Rng rng(seed);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(count), std::vector<double>(static_cast<std::size_t>(dim)));
  for (auto& p : pts)
    for (double& x : p) x = rng.uniform(lo, hi);
  return pts;
}

Vec random_combination(Rng& rng, const std::vector<Vec>& frame) {
  if (frame.empty()) throw std::invalid_argument("random_combination: empty frame");
  Vec v = Vec::Zero(frame.front().size());
  for (const auto& e : frame) v += rng.uniform(-1.0, 1.0) * e;
  return v;
}

}  // namespace gk
