#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gk {

/// Truncated multivariate Taylor jet: a value together with every partial
/// derivative through order 3 in `dim` variables.
///
/// A jet carries its own `order()` (0..3). Arithmetic between jets of
/// different order yields the smaller order, so quantities that were produced
/// by differentiating a jet (see `derivative`) never claim more accuracy than
/// they have. Partials above `order()` read as zero.
///
/// Second and third partials are stored as full dense arrays; every operation
/// writes them through a sorted-index loop and mirrors the result, so they
/// are bitwise symmetric.
class Jet3 {
 public:
  static constexpr int max_order = 3;

  Jet3() = default;
  /// Zero jet.
  Jet3(int dim, int order);

  static Jet3 constant(int dim, int order, double value);
  /// The coordinate function x_index, seeded with value `value`.
  static Jet3 variable(int dim, int order, int index, double value);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] int order() const noexcept { return order_; }

  [[nodiscard]] double value() const noexcept { return data_.empty() ? 0.0 : data_[0]; }
  [[nodiscard]] double d1(int a) const noexcept;
  [[nodiscard]] double d2(int a, int b) const noexcept;
  [[nodiscard]] double d3(int a, int b, int c) const noexcept;

  /// Views onto the stored blocks; empty when the order is too low.
  [[nodiscard]] std::span<const double> grad() const noexcept;
  [[nodiscard]] std::span<const double> hess() const noexcept;
  [[nodiscard]] std::span<const double> third() const noexcept;

  /// Jet of the partial derivative along coordinate `a`; order drops by one.
  [[nodiscard]] Jet3 derivative(int a) const;
  /// Copy with every block above `order` dropped.
  [[nodiscard]] Jet3 truncated(int order) const;

  Jet3& operator+=(const Jet3& rhs);
  Jet3& operator-=(const Jet3& rhs);
  Jet3& operator*=(double k) noexcept;
  Jet3& operator+=(double k) noexcept;

  /// this += u * v without a temporary. The result order is the minimum of
  /// the three orders.
  void add_product(const Jet3& u, const Jet3& v);
  /// this += k * u.
  void add_scaled(double k, const Jet3& u);

  friend Jet3 operator+(Jet3 lhs, const Jet3& rhs) { return lhs += rhs; }
  friend Jet3 operator-(Jet3 lhs, const Jet3& rhs) { return lhs -= rhs; }
  friend Jet3 operator*(const Jet3& lhs, const Jet3& rhs);
  friend Jet3 operator/(const Jet3& lhs, const Jet3& rhs);
  friend Jet3 operator*(double k, Jet3 rhs) { return rhs *= k; }
  friend Jet3 operator*(Jet3 lhs, double k) { return lhs *= k; }
  friend Jet3 operator+(Jet3 lhs, double k) { return lhs += k; }
  friend Jet3 operator+(double k, Jet3 rhs) { return rhs += k; }
  friend Jet3 operator-(Jet3 u);

  friend Jet3 exp(const Jet3& u);
  friend Jet3 sin(const Jet3& u);
  friend Jet3 cos(const Jet3& u);
  /// u^p for real p. Caller is responsible for the domain of p at u.value().
  friend Jet3 pow(const Jet3& u, double p);
  friend Jet3 reciprocal(const Jet3& u);

  /// Composition F(u) given F and its first three derivatives at u.value().
  [[nodiscard]] Jet3 compose(double f0, double f1, double f2, double f3) const;

 private:
  [[nodiscard]] std::size_t hess_offset() const noexcept { return 1 + static_cast<std::size_t>(dim_); }
  [[nodiscard]] std::size_t third_offset() const noexcept {
    return hess_offset() + static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_);
  }
  void reduce_order(int order);

  int dim_ = 0;
  int order_ = 0;
  std::vector<double> data_;
};

[[nodiscard]] std::size_t jet_storage_size(int dim, int order) noexcept;

}  // namespace gk
