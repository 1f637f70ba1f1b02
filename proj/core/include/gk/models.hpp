#pragma once

#include <span>
#include <vector>

#include "gk/geometry.hpp"
#include "gk/model.hpp"

namespace gk {

/// Warped product R^s x_f (R^2n, J, G) with f(t) = k e^{t_1 + ... + t_s}.
/// G and J are constant on the fiber; J^2 = -I and G(JU, JV) = G(U, V).
struct WarpedProductSpec {
  int s = 1;
  int n = 1;
  double k = 1.0;
  /// 2n x 2n; empty means the Euclidean metric.
  Mat G;
  /// 2n x 2n, J(a, b) = J^a_b; empty means J d/du_i = d/du_{n+i}.
  Mat J;
};

/// Coordinates (x_1..x_n, y_1..y_n, z_1..z_s),
/// g = e^{2 sum z} sum (dx_i^2 + dy_i^2) + sum dz_a^2, phi d/dx_i = d/dy_i,
/// phi d/dy_i = -d/dx_i, xi_a = d/dz_a, eta^a = dz_a.
[[nodiscard]] ChartModel build_example_2_2(int n, int s);

/// Seven-dimensional model (n = 2, s = 3) on coordinates
/// (x_1, y_1, x_2, y_2, z_1, z_2, z_3) with g = (dx^2 + dy^2)/(f_1^2 + f_2^2) + sum dz^2,
///   f_1 = e^{-w}(c_2 cos w - c_1 sin w), f_2 = e^{-w}(c_1 cos w + c_2 sin w), w = z_1 + z_2 + z_3.
/// phi is assembled from the frame e_1..e_7 (phi e_1 = e_2, phi e_3 = e_4).
[[nodiscard]] ChartModel build_example_2_3(double c1 = 1.0, double c2 = 1.0);

/// The frame fields e_1..e_7 of build_example_2_3.
[[nodiscard]] std::vector<TensorField> example_2_3_frame(double c1 = 1.0, double c2 = 1.0);

/// Coordinates (t_1..t_s, u_1..u_2n), g = sum dt^2 + f^2 G, phi = J on the
/// fiber and 0 on the base, xi_i = d/dt_i, eta^i = dt_i.
[[nodiscard]] ChartModel build_warped(const WarpedProductSpec& spec);

/// f(t) = k e^{sum t} as a field over the warped chart.
[[nodiscard]] Field warping_function(const WarpedProductSpec& spec);

/// Throws ModelError unless k > 0, J^2 = -I, G is symmetric positive definite
/// and J-invariant. Fills in defaults for empty G and J.
[[nodiscard]] WarpedProductSpec validated(WarpedProductSpec spec);

/// Same phi, xi, eta as build_example_2_2 with the flat metric: a normal
/// metric f-manifold that is not generalized Kenmotsu.
[[nodiscard]] ChartModel build_control(int n, int s);

/// Maps a point of the example22 chart (x, y, z) to the warped chart (t, u).
[[nodiscard]] std::vector<double> example_2_2_to_warped(int n, int s, std::span<const double> point);

}  // namespace gk
