#include "gk/model.hpp"

namespace gk {

void ChartModel::validate() const {
  if (n < 1 || s < 1) throw ModelError("model '" + name + "': need n >= 1 and s >= 1");
  const auto d = static_cast<std::size_t>(dim());
  if (g.size() != d * d) throw ModelError("model '" + name + "': metric must have dim^2 components");
  if (phi.size() != d * d) throw ModelError("model '" + name + "': phi must have dim^2 components");
  if (xi.size() != static_cast<std::size_t>(s) || eta.size() != static_cast<std::size_t>(s))
    throw ModelError("model '" + name + "': need exactly s structure vectors and 1-forms");
  for (int i = 0; i < s; ++i) {
    if (xi[static_cast<std::size_t>(i)].size() != d || eta[static_cast<std::size_t>(i)].size() != d)
      throw ModelError("model '" + name + "': structure fields must have dim components");
  }

  const auto check_range = [&](const Field& f, const char* what) {
    if (f.max_coordinate() >= dim())
      throw ModelError("model '" + name + "': " + what + " references coordinate " +
                       std::to_string(f.max_coordinate()) + " outside the chart");
  };
  for (const auto& f : g) check_range(f, "metric");
  for (const auto& f : phi) check_range(f, "phi");
  for (const auto& v : xi)
    for (const auto& f : v) check_range(f, "xi");
  for (const auto& v : eta)
    for (const auto& f : v) check_range(f, "eta");

  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b)
      if (g[a * d + b].to_string() != g[b * d + a].to_string())
        throw ModelError("model '" + name + "': metric is not symmetric at (" + std::to_string(a) + "," +
                         std::to_string(b) + ")");
}

TensorField ChartModel::metric_field() const {
  TensorField f(dim(), {Variance::lower, Variance::lower});
  f.components = g;
  return f;
}

TensorField ChartModel::phi_field() const {
  TensorField f(dim(), {Variance::upper, Variance::lower});
  f.components = phi;
  return f;
}

TensorField ChartModel::xi_field(int i) const { return TensorField::vector(xi.at(static_cast<std::size_t>(i))); }

TensorField ChartModel::eta_field(int i) const { return TensorField::covector(eta.at(static_cast<std::size_t>(i))); }

TensorField ChartModel::fundamental_form_field() const {
  const int d = dim();
  const auto ud = static_cast<std::size_t>(d);
  TensorField f(d, {Variance::lower, Variance::lower});
  for (std::size_t a = 0; a < ud; ++a) {
    for (std::size_t b = 0; b < ud; ++b) {
      Field sum(0.0);
      for (std::size_t c = 0; c < ud; ++c) sum = sum + g[a * ud + c] * phi[c * ud + b];
      f.components[a * ud + b] = sum;
    }
  }
  return f;
}

}  // namespace gk
