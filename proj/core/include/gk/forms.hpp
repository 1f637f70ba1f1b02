#pragma once

#include <span>

#include "gk/field.hpp"
#include "gk/model.hpp"
#include "gk/tensor.hpp"

namespace gk {

/// Exterior derivative with the alternation normalization
///   (dw)_{a0..ak} = 1/(k+1) sum_i (-1)^i d_{ai} w_{a0..^ai..ak},
/// so for a 1-form dw(X,Y) = 1/2 {X w(Y) - Y w(X) - w([X,Y])} and for a
/// 2-form dF(X,Y,Z) = 1/3 {X F(Y,Z) - Y F(X,Z) + Z F(X,Y) - ...}.
/// The input must be fully covariant; a rank-0 input yields the gradient.
[[nodiscard]] Tensor exterior_derivative(const TensorJet& omega);

/// Same, evaluating a form field at a point. k must be 1 or 2 and match the
/// field rank.
[[nodiscard]] Tensor exterior_derivative(const ChartModel& model, std::span<const double> point,
                                         const TensorField& omega, int k);

/// alpha ^ beta = Alt(alpha (x) beta). For a 1-form and a 2-form this gives
///   (a ^ F)(X,Y,Z) = 1/3 {a(X) F(Y,Z) - a(Y) F(X,Z) + a(Z) F(X,Y)}.
[[nodiscard]] Tensor wedge(const Tensor& alpha, const Tensor& beta);

/// Full alternation of a list of covariant factors: Alt(w1 (x) ... (x) wm),
/// evaluated on the coordinate frame (d_0, ..., d_{m-1}) when m equals the
/// dimension. Used for the top-degree volume component.
[[nodiscard]] double top_form_component(std::span<const Tensor> factors);

}  // namespace gk
