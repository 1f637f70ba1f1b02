#pragma once

#include <cassert>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace gk {

enum class Variance : unsigned char { upper, lower };

class TensorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense tensor at a point: d^r components, row-major over the slots, with a
/// variance marker per slot.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, std::vector<Variance> variance);
  Tensor(int dim, std::vector<Variance> variance, std::vector<double> components);

  static Tensor scalar(int dim, double value);
  static Tensor vector(std::span<const double> components);
  static Tensor covector(std::span<const double> components);
  /// Kronecker delta with (upper, lower) variance.
  static Tensor identity(int dim);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] int rank() const noexcept { return static_cast<int>(variance_.size()); }
  [[nodiscard]] const std::vector<Variance>& variance() const noexcept { return variance_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }

  [[nodiscard]] std::span<double> components() noexcept { return data_; }
  [[nodiscard]] std::span<const double> components() const noexcept { return data_; }

  template <std::integral... I>
  double& operator()(I... idx) noexcept {
    assert(sizeof...(I) == variance_.size());
    return data_[flat(idx...)];
  }
  template <std::integral... I>
  [[nodiscard]] double operator()(I... idx) const noexcept {
    assert(sizeof...(I) == variance_.size());
    return data_[flat(idx...)];
  }

  /// Bounds-checked multi-index access.
  [[nodiscard]] double& at(std::span<const int> idx);
  [[nodiscard]] double at(std::span<const int> idx) const;

  Tensor& operator+=(const Tensor& rhs);
  Tensor& operator-=(const Tensor& rhs);
  Tensor& operator*=(double k) noexcept;
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(double k, Tensor a) { return a *= k; }

 private:
  template <std::integral... I>
  [[nodiscard]] std::size_t flat(I... idx) const noexcept {
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }
  [[nodiscard]] std::size_t checked_offset(std::span<const int> idx) const;

  int dim_ = 0;
  std::vector<Variance> variance_;
  std::vector<double> data_;
};

[[nodiscard]] double max_abs(const Tensor& t) noexcept;

/// Contracts slots i and j. Mixed-variance slots are traced directly. Two
/// lower slots need the inverse metric (upper, upper); two upper slots need
/// the metric (lower, lower).
[[nodiscard]] Tensor contract(const Tensor& t, int slot_i, int slot_j, const Tensor* metric_or_inverse = nullptr);

/// Alternating part over `slots`, normalized by 1/k!.
[[nodiscard]] Tensor antisymmetrize(const Tensor& t, std::span<const int> slots);

[[nodiscard]] Tensor outer(const Tensor& a, const Tensor& b);

/// Contracts every slot with the given vectors (upper slots) or covectors
/// (lower slots) in order, i.e. evaluates the multilinear form.
[[nodiscard]] double evaluate(const Tensor& t, std::span<const std::span<const double>> args);

/// Sign of the permutation given as an index array.
[[nodiscard]] int permutation_sign(std::span<const int> perm);

}  // namespace gk
