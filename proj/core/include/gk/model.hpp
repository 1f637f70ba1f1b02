#pragma once

#include <string>
#include <vector>

#include "gk/field.hpp"

namespace gk {

/// Raised for malformed model descriptions.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coordinate-chart description of a metric f-manifold of dimension 2n+s.
///
/// All components are closed-form fields over the chart coordinates:
///   g[a*dim+b]   = g_ab (symmetric)
///   phi[a*dim+b] = phi^a_b
///   xi[i][a]     = xi_i^a
///   eta[i][a]    = eta^i_a
struct ChartModel {
  std::string name;
  int n = 0;
  int s = 0;
  std::vector<Field> g;
  std::vector<Field> phi;
  std::vector<std::vector<Field>> xi;
  std::vector<std::vector<Field>> eta;
  /// Locally a warped product R^s x_f (flat Kaehler) with f = k e^{sum t}.
  /// Identities that hold only for such products are asserted when set.
  bool warped_product = false;

  [[nodiscard]] int dim() const noexcept { return 2 * n + s; }

  /// Structural checks: sizes, n, s >= 1, coordinate references in range,
  /// g symmetric as written. Throws ModelError.
  void validate() const;

  [[nodiscard]] TensorField metric_field() const;
  [[nodiscard]] TensorField phi_field() const;
  [[nodiscard]] TensorField xi_field(int i) const;
  [[nodiscard]] TensorField eta_field(int i) const;
  /// Phi_ab = g_ac phi^c_b as a field.
  [[nodiscard]] TensorField fundamental_form_field() const;
};

}  // namespace gk
