#pragma once

#include <vector>

#include "gk/field.hpp"
#include "gk/model.hpp"

namespace gk::testing {

// Unit frame of the example22 chart: X_i = e^{-sum z} d/dx_i and
// Y_i = e^{-sum z} d/dy_i.
struct Example22Frame {
  std::vector<TensorField> x;
  std::vector<TensorField> y;
  std::vector<TensorField> xi;
};

inline Example22Frame example_2_2_frame(int n, int s) {
  const int d = 2 * n + s;
  std::vector<int> z;
  for (int a = 0; a < s; ++a) z.push_back(2 * n + a);
  const Field scale = exp(-coordinate_sum(z));
  Example22Frame f;
  for (int i = 0; i < n; ++i) {
    std::vector<Field> xc(static_cast<std::size_t>(d), Field(0.0));
    std::vector<Field> yc(static_cast<std::size_t>(d), Field(0.0));
    xc[static_cast<std::size_t>(i)] = scale;
    yc[static_cast<std::size_t>(n + i)] = scale;
    f.x.push_back(TensorField::vector(xc));
    f.y.push_back(TensorField::vector(yc));
  }
  for (int a = 0; a < s; ++a) {
    std::vector<Field> c(static_cast<std::size_t>(d), Field(0.0));
    c[static_cast<std::size_t>(2 * n + a)] = 1.0;
    f.xi.push_back(TensorField::vector(c));
  }
  return f;
}

// Same chart model with every metric component multiplied by c.
inline ChartModel scaled_metric(ChartModel m, double c) {
  for (auto& g : m.g) g = c * g;
  return m;
}

}  // namespace gk::testing
