#pragma once

// Hand-rolled generators for property tests. Every generator takes an Rng so
// failures replay from the seed printed by the test.

#include <cmath>
#include <vector>

#include "gk/field.hpp"
#include "gk/geometry.hpp"
#include "gk/sampling.hpp"

namespace gk::testing {

inline std::vector<double> random_point(Rng& rng, int dim, double lo = -0.5, double hi = 0.5) {
  std::vector<double> p(static_cast<std::size_t>(dim));
  for (auto& x : p) x = rng.uniform(lo, hi);
  return p;
}

inline Vec random_vec(Rng& rng, int dim) {
  Vec v(dim);
  for (int a = 0; a < dim; ++a) v(a) = rng.uniform(-1.0, 1.0);
  return v;
}

// Polynomial of total degree <= degree in `dim` coordinates with up to `terms`
// monomials and coefficients in [-2, 2].
inline Field random_polynomial(Rng& rng, int dim, int degree = 3, int terms = 4) {
  Field f(rng.uniform(-2.0, 2.0));
  for (int t = 0; t < terms; ++t) {
    Field mono(rng.uniform(-2.0, 2.0));
    const int deg = 1 + rng.index(degree);
    for (int k = 0; k < deg; ++k) mono = mono * Field::coordinate(rng.index(dim));
    f = f + mono;
  }
  return f;
}

inline double max_abs_diff(const Vec& a, const Vec& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace gk::testing
