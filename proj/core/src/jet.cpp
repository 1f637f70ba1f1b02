#include "gk/jet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace gk {

std::size_t jet_storage_size(int dim, int order) noexcept {
  const auto d = static_cast<std::size_t>(dim);
  std::size_t size = 1;
  if (order >= 1) size += d;
  if (order >= 2) size += d * d;
  if (order >= 3) size += d * d * d;
  return size;
}

Jet3::Jet3(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1) throw std::invalid_argument("Jet3: dimension must be positive");
  if (order < 0 || order > max_order) throw std::invalid_argument("Jet3: order must be in 0..3");
  data_.assign(jet_storage_size(dim, order), 0.0);
}

Jet3 Jet3::constant(int dim, int order, double value) {
  Jet3 j(dim, order);
  j.data_[0] = value;
  return j;
}

Jet3 Jet3::variable(int dim, int order, int index, double value) {
  if (index < 0 || index >= dim) throw std::out_of_range("Jet3::variable: coordinate index out of range");
  Jet3 j(dim, order);
  j.data_[0] = value;
  if (order >= 1) j.data_[1 + static_cast<std::size_t>(index)] = 1.0;
  return j;
}

double Jet3::d1(int a) const noexcept {
  if (order_ < 1) return 0.0;
  return data_[1 + static_cast<std::size_t>(a)];
}

double Jet3::d2(int a, int b) const noexcept {
  if (order_ < 2) return 0.0;
  return data_[hess_offset() + static_cast<std::size_t>(a * dim_ + b)];
}

double Jet3::d3(int a, int b, int c) const noexcept {
  if (order_ < 3) return 0.0;
  return data_[third_offset() + static_cast<std::size_t>((a * dim_ + b) * dim_ + c)];
}

std::span<const double> Jet3::grad() const noexcept {
  if (order_ < 1) return {};
  return {data_.data() + 1, static_cast<std::size_t>(dim_)};
}

std::span<const double> Jet3::hess() const noexcept {
  if (order_ < 2) return {};
  return {data_.data() + hess_offset(), static_cast<std::size_t>(dim_ * dim_)};
}

std::span<const double> Jet3::third() const noexcept {
  if (order_ < 3) return {};
  return {data_.data() + third_offset(), static_cast<std::size_t>(dim_ * dim_ * dim_)};
}

void Jet3::reduce_order(int order) {
  if (order < order_) {
    order_ = order;
    data_.resize(jet_storage_size(dim_, order_));
  }
}

Jet3 Jet3::truncated(int order) const {
  Jet3 out = *this;
  out.reduce_order(std::max(0, order));
  return out;
}

Jet3 Jet3::derivative(int a) const {
  if (a < 0 || a >= dim_) throw std::out_of_range("Jet3::derivative: coordinate index out of range");
  if (order_ == 0) throw std::logic_error("Jet3::derivative: jet has no derivative information");
  Jet3 out(dim_, order_ - 1);
  const std::size_t d = static_cast<std::size_t>(dim_);
  const std::size_t ua = static_cast<std::size_t>(a);
  out.data_[0] = data_[1 + ua];
  if (out.order_ >= 1) {
    for (std::size_t b = 0; b < d; ++b) out.data_[1 + b] = data_[hess_offset() + ua * d + b];
  }
  if (out.order_ >= 2) {
    const std::size_t src = third_offset() + ua * d * d;
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(src), d * d,
                out.data_.begin() + static_cast<std::ptrdiff_t>(out.hess_offset()));
  }
  return out;
}

Jet3& Jet3::operator+=(const Jet3& rhs) {
  assert(dim_ == rhs.dim_);
  reduce_order(rhs.order_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Jet3& Jet3::operator-=(const Jet3& rhs) {
  assert(dim_ == rhs.dim_);
  reduce_order(rhs.order_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Jet3& Jet3::operator*=(double k) noexcept {
  for (double& x : data_) x *= k;
  return *this;
}

Jet3& Jet3::operator+=(double k) noexcept {
  data_[0] += k;
  return *this;
}

Jet3 operator-(Jet3 u) {
  for (double& x : u.data_) x = -x;
  return u;
}

void Jet3::add_scaled(double k, const Jet3& u) {
  assert(dim_ == u.dim_);
  reduce_order(u.order_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += k * u.data_[i];
}

void Jet3::add_product(const Jet3& u, const Jet3& v) {
  assert(dim_ == u.dim_ && dim_ == v.dim_);
  reduce_order(std::min(u.order_, v.order_));
  const int d = dim_;
  const double* U = u.data_.data();
  const double* V = v.data_.data();
  double* R = data_.data();
  const double u0 = U[0];
  const double v0 = V[0];
  R[0] += u0 * v0;
  if (order_ < 1) return;

  const double* ug = U + 1;
  const double* vg = V + 1;
  for (int a = 0; a < d; ++a) R[1 + a] += u0 * vg[a] + ug[a] * v0;
  if (order_ < 2) return;

  const auto h2 = [d](int a, int b) { return static_cast<std::size_t>(a * d + b); };
  const double* uh = U + u.hess_offset();
  const double* vh = V + v.hess_offset();
  double* rh = R + hess_offset();
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      const double inc = u0 * vh[h2(a, b)] + ug[a] * vg[b] + ug[b] * vg[a] + uh[h2(a, b)] * v0;
      const double val = rh[h2(a, b)] + inc;
      rh[h2(a, b)] = val;
      rh[h2(b, a)] = val;
    }
  }
  if (order_ < 3) return;

  const auto h3 = [d](int a, int b, int c) { return static_cast<std::size_t>((a * d + b) * d + c); };
  const double* ut = U + u.third_offset();
  const double* vt = V + v.third_offset();
  double* rt = R + third_offset();
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      for (int c = b; c < d; ++c) {
        const double inc = u0 * vt[h3(a, b, c)] + ug[a] * vh[h2(b, c)] + ug[b] * vh[h2(a, c)] +
                           ug[c] * vh[h2(a, b)] + uh[h2(a, b)] * vg[c] + uh[h2(a, c)] * vg[b] +
                           uh[h2(b, c)] * vg[a] + ut[h3(a, b, c)] * v0;
        const double val = rt[h3(a, b, c)] + inc;
        rt[h3(a, b, c)] = val;
        rt[h3(a, c, b)] = val;
        rt[h3(b, a, c)] = val;
        rt[h3(b, c, a)] = val;
        rt[h3(c, a, b)] = val;
        rt[h3(c, b, a)] = val;
      }
    }
  }
}

Jet3 operator*(const Jet3& lhs, const Jet3& rhs) {
  Jet3 out(lhs.dim_, std::min(lhs.order_, rhs.order_));
  out.add_product(lhs, rhs);
  return out;
}

Jet3 Jet3::compose(double f0, double f1, double f2, double f3) const {
  Jet3 out(dim_, order_);
  const int d = dim_;
  out.data_[0] = f0;
  if (order_ < 1) return out;

  const double* ug = data_.data() + 1;
  for (int a = 0; a < d; ++a) out.data_[1 + a] = f1 * ug[a];
  if (order_ < 2) return out;

  const auto h2 = [d](int a, int b) { return static_cast<std::size_t>(a * d + b); };
  const double* uh = data_.data() + hess_offset();
  double* rh = out.data_.data() + hess_offset();
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      const double val = f1 * uh[h2(a, b)] + f2 * ug[a] * ug[b];
      rh[h2(a, b)] = val;
      rh[h2(b, a)] = val;
    }
  }
  if (order_ < 3) return out;

  const auto h3 = [d](int a, int b, int c) { return static_cast<std::size_t>((a * d + b) * d + c); };
  const double* ut = data_.data() + third_offset();
  double* rt = out.data_.data() + third_offset();
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      for (int c = b; c < d; ++c) {
        const double val = f1 * ut[h3(a, b, c)] +
                           f2 * (uh[h2(a, b)] * ug[c] + uh[h2(a, c)] * ug[b] + uh[h2(b, c)] * ug[a]) +
                           f3 * ug[a] * ug[b] * ug[c];
        rt[h3(a, b, c)] = val;
        rt[h3(a, c, b)] = val;
        rt[h3(b, a, c)] = val;
        rt[h3(b, c, a)] = val;
        rt[h3(c, a, b)] = val;
        rt[h3(c, b, a)] = val;
      }
    }
  }
  return out;
}

Jet3 exp(const Jet3& u) {
  const double e = std::exp(u.value());
  return u.compose(e, e, e, e);
}

Jet3 sin(const Jet3& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  return u.compose(s, c, -s, -c);
}

Jet3 cos(const Jet3& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  return u.compose(c, -s, -c, s);
}

Jet3 pow(const Jet3& u, double p) {
  const double x = u.value();
  // falling-factorial coefficients; a zero coefficient must not meet 0^negative
  double f[4];
  double coeff = 1.0;
  for (int k = 0; k < 4; ++k) {
    f[k] = coeff == 0.0 ? 0.0 : coeff * std::pow(x, p - k);
    coeff *= p - k;
  }
  return u.compose(f[0], f[1], f[2], f[3]);
}

Jet3 reciprocal(const Jet3& u) {
  const double r = 1.0 / u.value();
  return u.compose(r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r);
}

Jet3 operator/(const Jet3& lhs, const Jet3& rhs) { return lhs * reciprocal(rhs); }

}  // namespace gk
