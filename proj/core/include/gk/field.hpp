#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gk/jet.hpp"
#include "gk/tensor.hpp"

namespace gk {

/// Raised when a field cannot be evaluated at a point. `path()` names the
/// offending node from the root, e.g. "mul.rhs/div.rhs".
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::string path);

  [[nodiscard]] const std::string& path() const noexcept { return path_; }
  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

  /// Prefix the path with a parent edge label while unwinding.
  [[nodiscard]] EvaluationError nested(const std::string& edge) const;

 private:
  std::string reason_;
  std::string path_;
};

/// Closed-form scalar field over chart coordinates.
///
/// Immutable expression tree with value semantics (nodes are shared). The
/// vocabulary is fixed: constants, coordinate projections, + - * /, negation,
/// exp, sin, cos and real powers. Trivial identities (x*0, x*1, x+0) are
/// folded at construction.
class Field {
 public:
  enum class Op : unsigned char { constant, coordinate, add, sub, mul, div, neg, exp, sin, cos, pow };

  Field() : Field(0.0) {}
  Field(double constant);  // NOLINT(google-explicit-constructor): constants read naturally in formulas
  static Field coordinate(int index);

  [[nodiscard]] Op op() const noexcept;
  [[nodiscard]] std::optional<double> constant_value() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept;
  /// Largest coordinate index referenced, or -1 for a constant tree.
  [[nodiscard]] int max_coordinate() const noexcept;

  [[nodiscard]] double value(std::span<const double> point) const;
  [[nodiscard]] Jet3 jet(std::span<const double> point, int order) const;

  [[nodiscard]] std::string to_string() const;

  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator*(const Field& a, const Field& b);
  friend Field operator/(const Field& a, const Field& b);
  friend Field operator-(const Field& a);
  friend Field exp(const Field& a);
  friend Field sin(const Field& a);
  friend Field cos(const Field& a);
  friend Field pow(const Field& a, double exponent);

  struct Node;

 private:
  explicit Field(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Evaluates `field` and all its partials through `order` (1..3) at `point`.
/// Throws std::invalid_argument when the field references a coordinate
/// outside the point, EvaluationError on a singular node.
[[nodiscard]] Jet3 jet_eval(const Field& field, std::span<const double> point, int order);

/// Sum of the listed coordinates.
[[nodiscard]] Field coordinate_sum(std::span<const int> indices);

/// Value of a tensor plus its first coordinate partials. `grad` has the
/// variance of `value` with one extra trailing lower slot for the
/// differentiation index.
struct TensorJet {
  Tensor value;
  Tensor grad;
};

/// Tensor-valued field: one Field per component, row-major in the slot
/// order given by `variance`.
struct TensorField {
  int dim = 0;
  std::vector<Variance> variance;
  std::vector<Field> components;

  TensorField() = default;
  TensorField(int dim, std::vector<Variance> variance);

  [[nodiscard]] int rank() const noexcept { return static_cast<int>(variance.size()); }
  [[nodiscard]] Tensor evaluate(std::span<const double> point) const;
  [[nodiscard]] TensorJet evaluate_jet(std::span<const double> point) const;

  static TensorField vector(std::vector<Field> components);
  static TensorField covector(std::vector<Field> components);
};

}  // namespace gk
