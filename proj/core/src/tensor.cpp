#include "gk/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gk {
namespace {

std::size_t power(int dim, int rank) {
  std::size_t n = 1;
  for (int i = 0; i < rank; ++i) n *= static_cast<std::size_t>(dim);
  return n;
}

// Decodes a flat row-major index into `digits` (most significant first).
void decode(std::size_t flat, int dim, std::span<int> digits) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    digits[k] = static_cast<int>(flat % static_cast<std::size_t>(dim));
    flat /= static_cast<std::size_t>(dim);
  }
}

std::size_t encode(std::span<const int> digits, int dim) {
  std::size_t flat = 0;
  for (int d : digits) flat = flat * static_cast<std::size_t>(dim) + static_cast<std::size_t>(d);
  return flat;
}

void require_same_shape(const Tensor& a, const Tensor& b) {
  if (a.dim() != b.dim() || a.variance() != b.variance())
    throw TensorError("tensor shapes differ (dimension or variance)");
}

}  // namespace

Tensor::Tensor(int dim, std::vector<Variance> variance) : dim_(dim), variance_(std::move(variance)) {
  if (dim < 1) throw TensorError("tensor dimension must be positive");
  data_.assign(power(dim_, rank()), 0.0);
}

Tensor::Tensor(int dim, std::vector<Variance> variance, std::vector<double> components)
    : dim_(dim), variance_(std::move(variance)), data_(std::move(components)) {
  if (dim < 1) throw TensorError("tensor dimension must be positive");
  if (data_.size() != power(dim_, rank()))
    throw TensorError("component count " + std::to_string(data_.size()) + " does not equal dim^rank");
}

Tensor Tensor::scalar(int dim, double value) { return Tensor(dim, {}, {value}); }

Tensor Tensor::vector(std::span<const double> components) {
  return Tensor(static_cast<int>(components.size()), {Variance::upper},
                std::vector<double>(components.begin(), components.end()));
}

Tensor Tensor::covector(std::span<const double> components) {
  return Tensor(static_cast<int>(components.size()), {Variance::lower},
                std::vector<double>(components.begin(), components.end()));
}

Tensor Tensor::identity(int dim) {
  Tensor t(dim, {Variance::upper, Variance::lower});
  for (int a = 0; a < dim; ++a) t(a, a) = 1.0;
  return t;
}

std::size_t Tensor::checked_offset(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank())
    throw TensorError("index arity " + std::to_string(idx.size()) + " does not match rank " + std::to_string(rank()));
  for (int i : idx)
    if (i < 0 || i >= dim_) throw TensorError("index " + std::to_string(i) + " out of range");
  return encode(idx, dim_);
}

double& Tensor::at(std::span<const int> idx) { return data_[checked_offset(idx)]; }
double Tensor::at(std::span<const int> idx) const { return data_[checked_offset(idx)]; }

Tensor& Tensor::operator+=(const Tensor& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(double k) noexcept {
  for (double& x : data_) x *= k;
  return *this;
}

double max_abs(const Tensor& t) noexcept {
  double m = 0.0;
  for (double x : t.components()) m = std::max(m, std::abs(x));
  return m;
}

Tensor contract(const Tensor& t, int slot_i, int slot_j, const Tensor* metric_or_inverse) {
  const int r = t.rank();
  if (slot_i < 0 || slot_i >= r || slot_j < 0 || slot_j >= r)
    throw TensorError("contract: slot out of range for rank " + std::to_string(r));
  if (slot_i == slot_j) throw TensorError("contract: slots must be distinct");

  const Variance vi = t.variance()[static_cast<std::size_t>(slot_i)];
  const Variance vj = t.variance()[static_cast<std::size_t>(slot_j)];
  const bool mixed = vi != vj;
  if (!mixed) {
    if (metric_or_inverse == nullptr)
      throw TensorError("contract: slots share variance; a metric or inverse metric is required");
    const Variance needed = vi == Variance::lower ? Variance::upper : Variance::lower;
    if (metric_or_inverse->rank() != 2 || metric_or_inverse->variance()[0] != needed ||
        metric_or_inverse->variance()[1] != needed)
      throw TensorError(vi == Variance::lower ? "contract: two lower slots need the inverse metric (upper, upper)"
                                              : "contract: two upper slots need the metric (lower, lower)");
    if (metric_or_inverse->dim() != t.dim()) throw TensorError("contract: metric dimension mismatch");
  }

  std::vector<Variance> rest;
  for (int k = 0; k < r; ++k)
    if (k != slot_i && k != slot_j) rest.push_back(t.variance()[static_cast<std::size_t>(k)]);
  Tensor out(t.dim(), rest);

  const int d = t.dim();
  std::vector<int> outer_idx(static_cast<std::size_t>(r - 2));
  std::vector<int> full(static_cast<std::size_t>(r));
  for (std::size_t q = 0; q < out.size(); ++q) {
    decode(q, d, outer_idx);
    for (int k = 0, m = 0; k < r; ++k)
      if (k != slot_i && k != slot_j) full[static_cast<std::size_t>(k)] = outer_idx[static_cast<std::size_t>(m++)];
    double sum = 0.0;
    if (mixed) {
      for (int a = 0; a < d; ++a) {
        full[static_cast<std::size_t>(slot_i)] = a;
        full[static_cast<std::size_t>(slot_j)] = a;
        sum += t.components()[encode(full, d)];
      }
    } else {
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          const double m = (*metric_or_inverse)(a, b);
          if (m == 0.0) continue;
          full[static_cast<std::size_t>(slot_i)] = a;
          full[static_cast<std::size_t>(slot_j)] = b;
          sum += m * t.components()[encode(full, d)];
        }
      }
    }
    out.components()[q] = sum;
  }
  return out;
}

int permutation_sign(std::span<const int> perm) {
  int inversions = 0;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

Tensor antisymmetrize(const Tensor& t, std::span<const int> slots) {
  const int r = t.rank();
  for (std::size_t a = 0; a < slots.size(); ++a) {
    if (slots[a] < 0 || slots[a] >= r) throw TensorError("antisymmetrize: slot out of range");
    for (std::size_t b = a + 1; b < slots.size(); ++b)
      if (slots[a] == slots[b]) throw TensorError("antisymmetrize: duplicate slot " + std::to_string(slots[a]));
    if (t.variance()[static_cast<std::size_t>(slots[a])] != t.variance()[static_cast<std::size_t>(slots[0])])
      throw TensorError("antisymmetrize: slots must share variance");
  }
  if (slots.size() < 2) return t;

  const std::size_t k = slots.size();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::vector<int>, int>> perms;
  do {
    perms.emplace_back(perm, permutation_sign(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double norm = 1.0 / static_cast<double>(perms.size());

  const int d = t.dim();
  Tensor out(d, t.variance());
  std::vector<int> idx(static_cast<std::size_t>(r));
  std::vector<int> src(static_cast<std::size_t>(r));
  for (std::size_t q = 0; q < out.size(); ++q) {
    decode(q, d, idx);
    double sum = 0.0;
    for (const auto& [p, sign] : perms) {
      src = idx;
      for (std::size_t m = 0; m < k; ++m)
        src[static_cast<std::size_t>(slots[m])] = idx[static_cast<std::size_t>(slots[static_cast<std::size_t>(p[m])])];
      sum += sign * t.components()[encode(src, d)];
    }
    out.components()[q] = norm * sum;
  }
  return out;
}

Tensor outer(const Tensor& a, const Tensor& b) {
  if (a.dim() != b.dim()) throw TensorError("outer: dimension mismatch");
  std::vector<Variance> v = a.variance();
  v.insert(v.end(), b.variance().begin(), b.variance().end());
  Tensor out(a.dim(), std::move(v));
  std::size_t q = 0;
  for (double x : a.components())
    for (double y : b.components()) out.components()[q++] = x * y;
  return out;
}

double evaluate(const Tensor& t, std::span<const std::span<const double>> args) {
  if (static_cast<int>(args.size()) != t.rank()) throw TensorError("evaluate: argument count does not match rank");
  const auto d = static_cast<std::size_t>(t.dim());
  for (auto a : args)
    if (a.size() != d) throw TensorError("evaluate: argument dimension mismatch");
  std::vector<double> work(t.components().begin(), t.components().end());
  // contract trailing slots first
  for (std::size_t slot = args.size(); slot-- > 0;) {
    const std::size_t outer_size = work.size() / d;
    std::vector<double> next(outer_size, 0.0);
    for (std::size_t q = 0; q < outer_size; ++q) {
      double s = 0.0;
      for (std::size_t a = 0; a < d; ++a) s += work[q * d + a] * args[slot][a];
      next[q] = s;
    }
    work = std::move(next);
  }
  return work[0];
}

}  // namespace gk
