#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gk/field.hpp"
#include "gk/model.hpp"
#include "gk/tensor.hpp"

namespace gk {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The metric is not positive definite (or numerically singular) at a point.
class SingularMetricError : public GeometryError {
 public:
  SingularMetricError(const std::string& what, double condition) : GeometryError(what), condition_(condition) {}
  /// Ratio of extreme absolute eigenvalues; infinite when an eigenvalue is 0.
  [[nodiscard]] double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

class DegeneratePlaneError : public GeometryError {
 public:
  DegeneratePlaneError(const std::string& what, double gram) : GeometryError(what), gram_(gram) {}
  [[nodiscard]] double gram_determinant() const noexcept { return gram_; }

 private:
  double gram_;
};

/// Gram determinants below this are treated as degenerate planes.
inline constexpr double degenerate_plane_tolerance = 1e-12;

/// How far up the derivative ladder a LocalGeometry is evaluated.
///   connection: Christoffel symbols (metric jets of order 1)
///   curvature:  + Riemann, Ricci (order 2)
///   full:       + covariant derivatives of Riemann and Ricci (order 3)
enum class Depth { connection, curvature, full };

struct CurvatureBundle {
  Tensor gamma;    // Gamma^a_bc
  Tensor riemann;  // R^a_bcd, R(d_c, d_d) d_b = R^a_bcd d_a
  Tensor ricci;    // S_bd = R^a_bad
  double scalar = 0.0;
  std::vector<double> point;
};

/// Levi-Civita geometry of a chart model at one point, computed from exact
/// metric jets. Immutable once constructed.
///
/// Conventions: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
/// S(X,Y) = trace(Z -> R(Z,X)Y). Derivative slots are always appended last:
/// nabla_riemann()(a,b,c,d,e) = (nabla_e R)^a_bcd.
class LocalGeometry {
 public:
  LocalGeometry(ChartModel model, std::span<const double> point, Depth depth = Depth::full);

  [[nodiscard]] const ChartModel& model() const noexcept { return model_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] std::span<const double> point() const noexcept { return point_; }
  [[nodiscard]] Depth depth() const noexcept { return depth_; }

  [[nodiscard]] const Mat& metric() const noexcept { return g_; }
  [[nodiscard]] const Mat& inverse_metric() const noexcept { return ginv_; }
  [[nodiscard]] const Tensor& metric_tensor() const noexcept { return g_tensor_; }
  [[nodiscard]] const Tensor& inverse_metric_tensor() const noexcept { return ginv_tensor_; }
  /// (a,b,e) = d_e g_ab
  [[nodiscard]] const Tensor& metric_grad() const noexcept { return dg_; }
  [[nodiscard]] const Tensor& christoffel() const noexcept { return gamma_; }
  [[nodiscard]] const Tensor& riemann() const;
  [[nodiscard]] const Tensor& ricci() const;
  [[nodiscard]] double scalar_curvature() const;
  [[nodiscard]] const Tensor& nabla_riemann() const;
  /// (b,d,e) = (nabla_e S)_bd
  [[nodiscard]] const Tensor& nabla_ricci() const;
  [[nodiscard]] CurvatureBundle bundle() const;

  [[nodiscard]] double inner(const Vec& x, const Vec& y) const { return x.dot(g_ * y); }
  [[nodiscard]] double norm(const Vec& x) const;
  /// Lowers a vector to a covector.
  [[nodiscard]] Vec flat(const Vec& x) const { return g_ * x; }

  /// R(X,Y)Z
  [[nodiscard]] Vec curvature(const Vec& x, const Vec& y, const Vec& z) const;
  /// The endomorphism R(X,Y), M(a,h) = R^a_hcd X^c Y^d.
  [[nodiscard]] Mat curvature_operator(const Vec& x, const Vec& y) const;
  [[nodiscard]] double ricci(const Vec& x, const Vec& y) const;
  /// (nabla_Z R)(X,Y)W
  [[nodiscard]] Vec nabla_curvature(const Vec& z, const Vec& x, const Vec& y, const Vec& w) const;
  /// (nabla_X S)(Y,Z)
  [[nodiscard]] double nabla_ricci(const Vec& x, const Vec& y, const Vec& z) const;
  /// Throws DegeneratePlaneError when the Gram determinant is below 1e-12.
  [[nodiscard]] double sectional_curvature(const Vec& x, const Vec& y) const;

  /// Covariant derivative of a tensor given its value and coordinate partials.
  [[nodiscard]] Tensor covariant_derivative(const TensorJet& field) const;
  /// nabla_X Y for a vector field Y given as value + partials.
  [[nodiscard]] Vec covariant_derivative(const Vec& x, const TensorJet& vector_field) const;

 private:
  void require(Depth needed, const char* what) const;

  ChartModel model_;
  int dim_;
  std::vector<double> point_;
  Depth depth_;
  Mat g_;
  Mat ginv_;
  Tensor g_tensor_;
  Tensor ginv_tensor_;
  Tensor dg_;
  Tensor gamma_;
  Tensor riemann_;
  Tensor ricci_;
  double scalar_ = 0.0;
  Tensor nabla_riemann_;
  Tensor nabla_ricci_;
};

/// Covariant derivative of a tensor with the given Christoffel symbols.
[[nodiscard]] Tensor nabla(const TensorJet& field, const Tensor& gamma);

/// Lie derivative L_V T from values and partials of both fields.
[[nodiscard]] Tensor lie_derivative(const TensorJet& v, const TensorJet& t);

/// Derivation action of a (1,1) endomorphism M on a tensor: +M on upper
/// slots, -M^T on lower slots. Rank-0 tensors map to zero.
[[nodiscard]] Tensor derivation_action(const Mat& m, const Tensor& t);

// Point-wise entry points operating directly on a model.

[[nodiscard]] Tensor christoffel(const ChartModel& model, std::span<const double> point);
[[nodiscard]] Tensor covariant_derivative(const ChartModel& model, std::span<const double> point,
                                          const TensorField& field);
[[nodiscard]] Tensor riemann(const ChartModel& model, std::span<const double> point);
[[nodiscard]] std::pair<Tensor, double> ricci_and_scalar(const ChartModel& model, std::span<const double> point);
[[nodiscard]] double sectional_curvature(const ChartModel& model, std::span<const double> point, const Vec& x,
                                         const Vec& y);
[[nodiscard]] Tensor nabla_riemann(const ChartModel& model, std::span<const double> point);
/// L_X T for a vector field X and any tensor field T (g, phi, eta^i or a
/// vector field, in which case the result is the bracket [X,T]).
[[nodiscard]] Tensor lie_ops(const ChartModel& model, std::span<const double> point, const TensorField& x,
                             const TensorField& t);
[[nodiscard]] Vec lie_bracket(std::span<const double> point, const TensorField& x, const TensorField& y);
/// R(X,Y) acting on T as a derivation.
[[nodiscard]] Tensor curvature_action(const LocalGeometry& geo, const Tensor& t, const Vec& x, const Vec& y);
[[nodiscard]] Tensor curvature_action(const ChartModel& model, std::span<const double> point, const Tensor& t,
                                      const Vec& x, const Vec& y);

[[nodiscard]] Vec to_vec(const Tensor& t);
[[nodiscard]] Vec to_vec(std::span<const double> v);

}  // namespace gk
