#include "gk/geometry.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

namespace gk {
namespace {

using JetMatrix = std::vector<Jet3>;

int ladder_order(Depth depth) {
  switch (depth) {
    case Depth::connection: return 1;
    case Depth::curvature: return 2;
    case Depth::full: return 3;
  }
  return 3;
}

double condition_estimate(const Mat& g) {
  const Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  const Vec ev = es.eigenvalues().cwiseAbs();
  const double lo = ev.minCoeff();
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return ev.maxCoeff() / lo;
}

// Inverse of a matrix of jets via the Neumann series around the value:
// G^{-1} = sum_k (-A N)^k A, A = G(p)^{-1}, N = G - G(p). N has zero value,
// so the series terminates at k = order.
JetMatrix inverse_jets(const JetMatrix& gj, const Mat& a_inv, int dim, int order) {
  const auto d = static_cast<std::size_t>(dim);
  JetMatrix inv(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) inv[i * d + j] = Jet3::constant(dim, order, a_inv(static_cast<int>(i), static_cast<int>(j)));
  if (order == 0) return inv;

  JetMatrix neg_an(d * d, Jet3(dim, order));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < d; ++j) {
      Jet3 nkj = gj[k * d + j];
      nkj += -nkj.value();
      for (std::size_t i = 0; i < d; ++i) {
        const double aik = a_inv(static_cast<int>(i), static_cast<int>(k));
        if (aik != 0.0) neg_an[i * d + j].add_scaled(-aik, nkj);
      }
    }
  }

  JetMatrix term = inv;
  for (int k = 1; k <= order; ++k) {
    JetMatrix next(d * d, Jet3(dim, order));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t j = 0; j < d; ++j) next[i * d + j].add_product(neg_an[i * d + m], term[m * d + j]);
    for (std::size_t q = 0; q < d * d; ++q) inv[q] += next[q];
    term = std::move(next);
  }
  return inv;
}

std::vector<int> strides_for(int dim, int rank) {
  std::vector<int> st(static_cast<std::size_t>(rank));
  int s = 1;
  for (int k = rank; k-- > 0;) {
    st[static_cast<std::size_t>(k)] = s;
    s *= dim;
  }
  return st;
}

void require_vec(const Vec& v, int dim, const char* what) {
  if (v.size() != dim)
    throw std::invalid_argument(std::string(what) + ": vector has " + std::to_string(v.size()) +
                                " components, expected " + std::to_string(dim));
}

}  // namespace

LocalGeometry::LocalGeometry(ChartModel model, std::span<const double> point, Depth depth)
    : model_(std::move(model)), dim_(model_.dim()), point_(point.begin(), point.end()), depth_(depth) {
  if (static_cast<int>(point_.size()) != dim_)
    throw std::invalid_argument("LocalGeometry: point has " + std::to_string(point_.size()) +
                                " coordinates, chart dimension is " + std::to_string(dim_));
  const int order = ladder_order(depth);
  const int d = dim_;
  const auto ud = static_cast<std::size_t>(d);

  JetMatrix gj(ud * ud);
  for (std::size_t a = 0; a < ud; ++a) {
    for (std::size_t b = a; b < ud; ++b) {
      gj[a * ud + b] = model_.g[a * ud + b].jet(point_, order);
      gj[b * ud + a] = gj[a * ud + b];
    }
  }

  g_.resize(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) g_(a, b) = gj[static_cast<std::size_t>(a * d + b)].value();
  const Eigen::LLT<Mat> llt(g_);
  const double cond = condition_estimate(g_);
  if (llt.info() != Eigen::Success || !(cond < 1e14))
    throw SingularMetricError("metric is singular or not positive definite at the point (condition estimate " +
                                  std::to_string(cond) + ")",
                              cond);
  ginv_ = llt.solve(Mat::Identity(d, d));
  ginv_ = 0.5 * (ginv_ + ginv_.transpose()).eval();

  g_tensor_ = Tensor(d, {Variance::lower, Variance::lower});
  ginv_tensor_ = Tensor(d, {Variance::upper, Variance::upper});
  dg_ = Tensor(d, {Variance::lower, Variance::lower, Variance::lower});
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      g_tensor_(a, b) = g_(a, b);
      ginv_tensor_(a, b) = ginv_(a, b);
      for (int e = 0; e < d; ++e) dg_(a, b, e) = gj[static_cast<std::size_t>(a * d + b)].d1(e);
    }
  }

  const JetMatrix ginv_j = inverse_jets(gj, ginv_, d, order);

  // dgj[(e*d + a)*d + b] = D_e g_ab, one order lower.
  JetMatrix dgj(ud * ud * ud);
  for (std::size_t a = 0; a < ud; ++a)
    for (std::size_t b = a; b < ud; ++b)
      for (std::size_t e = 0; e < ud; ++e) {
        dgj[(e * ud + a) * ud + b] = gj[a * ud + b].derivative(static_cast<int>(e));
        dgj[(e * ud + b) * ud + a] = dgj[(e * ud + a) * ud + b];
      }
  const auto dgi = [&](std::size_t e, std::size_t a, std::size_t b) -> const Jet3& {
    return dgj[(e * ud + a) * ud + b];
  };

  // Gamma^a_bc = 1/2 g^ae (D_b g_ec + D_c g_be - D_e g_bc)
  const int gorder = order - 1;
  JetMatrix gam(ud * ud * ud);
  {
    JetMatrix koszul(ud);
    for (std::size_t b = 0; b < ud; ++b) {
      for (std::size_t c = b; c < ud; ++c) {
        for (std::size_t e = 0; e < ud; ++e) koszul[e] = dgi(b, e, c) + dgi(c, b, e) - dgi(e, b, c);
        for (std::size_t a = 0; a < ud; ++a) {
          Jet3 sum(d, gorder);
          for (std::size_t e = 0; e < ud; ++e) sum.add_product(ginv_j[a * ud + e], koszul[e]);
          sum *= 0.5;
          gam[(a * ud + b) * ud + c] = sum;
          gam[(a * ud + c) * ud + b] = std::move(sum);
        }
      }
    }
  }
  const auto gi = [&](std::size_t a, std::size_t b, std::size_t c) -> const Jet3& {
    return gam[(a * ud + b) * ud + c];
  };
  gamma_ = Tensor(d, {Variance::upper, Variance::lower, Variance::lower});
  for (std::size_t q = 0; q < gam.size(); ++q) gamma_.components()[q] = gam[q].value();
  if (depth == Depth::connection) return;

  // R^a_bcd = D_c Gamma^a_db - D_d Gamma^a_cb + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb
  const int rorder = order - 2;
  const std::size_t d4 = ud * ud * ud * ud;
  std::vector<Jet3> rj(d4);
  {
    // dgam[((a*d + b)*d + c)*d + e] = D_e Gamma^a_bc
    std::vector<Jet3> dgam(d4);
    for (std::size_t a = 0; a < ud; ++a)
      for (std::size_t b = 0; b < ud; ++b)
        for (std::size_t c = b; c < ud; ++c)
          for (std::size_t e = 0; e < ud; ++e) {
            dgam[((a * ud + b) * ud + c) * ud + e] = gi(a, b, c).derivative(static_cast<int>(e));
            dgam[((a * ud + c) * ud + b) * ud + e] = dgam[((a * ud + b) * ud + c) * ud + e];
          }
    const auto ridx = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
      return ((a * ud + b) * ud + c) * ud + e;
    };
    for (std::size_t a = 0; a < ud; ++a) {
      for (std::size_t b = 0; b < ud; ++b) {
        for (std::size_t c = 0; c < ud; ++c) {
          rj[ridx(a, b, c, c)] = Jet3(d, rorder);
          for (std::size_t e4 = c + 1; e4 < ud; ++e4) {
            const std::size_t dd = e4;
            Jet3 r = dgam[ridx(a, dd, b, c)] - dgam[ridx(a, c, b, dd)];
            for (std::size_t e = 0; e < ud; ++e) {
              r.add_product(gi(a, c, e), gi(e, dd, b));
              Jet3 neg = gi(a, dd, e) * gi(e, c, b);
              r -= neg;
            }
            rj[ridx(a, b, dd, c)] = -r;
            rj[ridx(a, b, c, dd)] = std::move(r);
          }
        }
      }
    }
  }
  riemann_ = Tensor(d, {Variance::upper, Variance::lower, Variance::lower, Variance::lower});
  for (std::size_t q = 0; q < d4; ++q) riemann_.components()[q] = rj[q].value();

  ricci_ = Tensor(d, {Variance::lower, Variance::lower});
  for (int b = 0; b < d; ++b)
    for (int dd = 0; dd < d; ++dd) {
      double sum = 0.0;
      for (int a = 0; a < d; ++a) sum += riemann_(a, b, a, dd);
      ricci_(b, dd) = sum;
    }
  scalar_ = 0.0;
  for (int b = 0; b < d; ++b)
    for (int dd = 0; dd < d; ++dd) scalar_ += ginv_(b, dd) * ricci_(b, dd);
  if (depth == Depth::curvature) return;

  Tensor dr(d, {Variance::upper, Variance::lower, Variance::lower, Variance::lower, Variance::lower});
  for (std::size_t q = 0; q < d4; ++q)
    for (std::size_t e = 0; e < ud; ++e) dr.components()[q * ud + e] = rj[q].d1(static_cast<int>(e));
  Tensor ds(d, {Variance::lower, Variance::lower, Variance::lower});
  for (int b = 0; b < d; ++b)
    for (int dd = 0; dd < d; ++dd)
      for (int e = 0; e < d; ++e) {
        double sum = 0.0;
        for (int a = 0; a < d; ++a) sum += dr(a, b, a, dd, e);
        ds(b, dd, e) = sum;
      }
  nabla_riemann_ = nabla(TensorJet{riemann_, dr}, gamma_);
  nabla_ricci_ = nabla(TensorJet{ricci_, ds}, gamma_);
}

void LocalGeometry::require(Depth needed, const char* what) const {
  if (static_cast<int>(depth_) < static_cast<int>(needed))
    throw std::logic_error(std::string("LocalGeometry: ") + what + " needs a deeper evaluation depth");
}

const Tensor& LocalGeometry::riemann() const {
  require(Depth::curvature, "riemann");
  return riemann_;
}

const Tensor& LocalGeometry::ricci() const {
  require(Depth::curvature, "ricci");
  return ricci_;
}

double LocalGeometry::scalar_curvature() const {
  require(Depth::curvature, "scalar curvature");
  return scalar_;
}

const Tensor& LocalGeometry::nabla_riemann() const {
  require(Depth::full, "nabla_riemann");
  return nabla_riemann_;
}

const Tensor& LocalGeometry::nabla_ricci() const {
  require(Depth::full, "nabla_ricci");
  return nabla_ricci_;
}

CurvatureBundle LocalGeometry::bundle() const {
  require(Depth::curvature, "bundle");
  return {gamma_, riemann_, ricci_, scalar_, point_};
}

double LocalGeometry::norm(const Vec& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

Vec LocalGeometry::curvature(const Vec& x, const Vec& y, const Vec& z) const {
  return curvature_operator(x, y) * z;
}

Mat LocalGeometry::curvature_operator(const Vec& x, const Vec& y) const {
  require(Depth::curvature, "curvature");
  require_vec(x, dim_, "curvature");
  require_vec(y, dim_, "curvature");
  const int d = dim_;
  Mat m = Mat::Zero(d, d);
  const double* r = riemann_.components().data();
  for (int a = 0; a < d; ++a)
    for (int h = 0; h < d; ++h) {
      double sum = 0.0;
      const double* block = r + static_cast<std::ptrdiff_t>((a * d + h) * d * d);
      for (int c = 0; c < d; ++c) {
        if (x(c) == 0.0) continue;
        double inner_sum = 0.0;
        for (int dd = 0; dd < d; ++dd) inner_sum += block[c * d + dd] * y(dd);
        sum += x(c) * inner_sum;
      }
      m(a, h) = sum;
    }
  return m;
}

double LocalGeometry::ricci(const Vec& x, const Vec& y) const {
  require(Depth::curvature, "ricci");
  require_vec(x, dim_, "ricci");
  require_vec(y, dim_, "ricci");
  double sum = 0.0;
  for (int b = 0; b < dim_; ++b)
    for (int dd = 0; dd < dim_; ++dd) sum += ricci_(b, dd) * x(b) * y(dd);
  return sum;
}

Vec LocalGeometry::nabla_curvature(const Vec& z, const Vec& x, const Vec& y, const Vec& w) const {
  require(Depth::full, "nabla_curvature");
  for (const Vec* v : {&z, &x, &y, &w}) require_vec(*v, dim_, "nabla_curvature");
  const int d = dim_;
  Vec out = Vec::Zero(d);
  const double* r = nabla_riemann_.components().data();
  for (int a = 0; a < d; ++a) {
    double sum = 0.0;
    for (int b = 0; b < d; ++b) {
      if (w(b) == 0.0) continue;
      for (int c = 0; c < d; ++c) {
        if (x(c) == 0.0) continue;
        for (int dd = 0; dd < d; ++dd) {
          if (y(dd) == 0.0) continue;
          const double* row = r + static_cast<std::ptrdiff_t>((((a * d + b) * d + c) * d + dd) * d);
          double zs = 0.0;
          for (int e = 0; e < d; ++e) zs += row[e] * z(e);
          sum += w(b) * x(c) * y(dd) * zs;
        }
      }
    }
    out(a) = sum;
  }
  return out;
}

double LocalGeometry::nabla_ricci(const Vec& x, const Vec& y, const Vec& z) const {
  require(Depth::full, "nabla_ricci");
  for (const Vec* v : {&x, &y, &z}) require_vec(*v, dim_, "nabla_ricci");
  double sum = 0.0;
  for (int b = 0; b < dim_; ++b)
    for (int dd = 0; dd < dim_; ++dd)
      for (int e = 0; e < dim_; ++e) sum += nabla_ricci_(b, dd, e) * y(b) * z(dd) * x(e);
  return sum;
}

double LocalGeometry::sectional_curvature(const Vec& x, const Vec& y) const {
  const double xx = inner(x, x);
  const double yy = inner(y, y);
  const double xy = inner(x, y);
  const double gram = xx * yy - xy * xy;
  if (gram < degenerate_plane_tolerance)
    throw DegeneratePlaneError("sectional_curvature: the vectors span a degenerate plane (Gram determinant " +
                                   std::to_string(gram) + ")",
                               gram);
  return inner(curvature(x, y, y), x) / gram;
}

Tensor LocalGeometry::covariant_derivative(const TensorJet& field) const { return nabla(field, gamma_); }

Vec LocalGeometry::covariant_derivative(const Vec& x, const TensorJet& vector_field) const {
  require_vec(x, dim_, "covariant_derivative");
  if (vector_field.value.rank() != 1 || vector_field.value.variance()[0] != Variance::upper)
    throw TensorError("covariant_derivative: expected a vector field");
  const Tensor nv = nabla(vector_field, gamma_);
  Vec out = Vec::Zero(dim_);
  for (int a = 0; a < dim_; ++a)
    for (int e = 0; e < dim_; ++e) out(a) += nv(a, e) * x(e);
  return out;
}

Tensor nabla(const TensorJet& field, const Tensor& gamma) {
  const Tensor& t = field.value;
  const int d = t.dim();
  const int r = t.rank();
  if (gamma.dim() != d || gamma.rank() != 3) throw TensorError("nabla: Christoffel symbols have the wrong shape");
  if (field.grad.dim() != d || field.grad.rank() != r + 1) throw TensorError("nabla: gradient has the wrong shape");

  std::vector<Variance> v = t.variance();
  v.push_back(Variance::lower);
  Tensor out(d, v);
  const auto strides = strides_for(d, r);
  std::vector<int> idx(static_cast<std::size_t>(r));
  const auto tc = t.components();
  for (std::size_t q = 0; q < t.size(); ++q) {
    std::size_t rem = q;
    for (int k = r; k-- > 0;) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(d));
      rem /= static_cast<std::size_t>(d);
    }
    for (int e = 0; e < d; ++e) {
      double val = field.grad.components()[q * static_cast<std::size_t>(d) + static_cast<std::size_t>(e)];
      for (int k = 0; k < r; ++k) {
        const int ik = idx[static_cast<std::size_t>(k)];
        const int st = strides[static_cast<std::size_t>(k)];
        const std::size_t base = q - static_cast<std::size_t>(ik * st);
        double corr = 0.0;
        if (t.variance()[static_cast<std::size_t>(k)] == Variance::upper) {
          for (int h = 0; h < d; ++h) corr += gamma(ik, e, h) * tc[base + static_cast<std::size_t>(h * st)];
          val += corr;
        } else {
          for (int h = 0; h < d; ++h) corr += gamma(h, e, ik) * tc[base + static_cast<std::size_t>(h * st)];
          val -= corr;
        }
      }
      out.components()[q * static_cast<std::size_t>(d) + static_cast<std::size_t>(e)] = val;
    }
  }
  return out;
}

Tensor lie_derivative(const TensorJet& v, const TensorJet& t) {
  const int d = t.value.dim();
  if (v.value.rank() != 1 || v.value.variance()[0] != Variance::upper || v.value.dim() != d)
    throw TensorError("lie_derivative: the first argument must be a vector field of matching dimension");
  const int r = t.value.rank();
  Tensor out(d, t.value.variance());
  const auto strides = strides_for(d, r);
  std::vector<int> idx(static_cast<std::size_t>(r));
  const auto tc = t.value.components();
  const auto ud = static_cast<std::size_t>(d);
  for (std::size_t q = 0; q < out.size(); ++q) {
    std::size_t rem = q;
    for (int k = r; k-- > 0;) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(rem % ud);
      rem /= ud;
    }
    double val = 0.0;
    for (int c = 0; c < d; ++c) val += v.value(c) * t.grad.components()[q * ud + static_cast<std::size_t>(c)];
    for (int k = 0; k < r; ++k) {
      const int ik = idx[static_cast<std::size_t>(k)];
      const int st = strides[static_cast<std::size_t>(k)];
      const std::size_t base = q - static_cast<std::size_t>(ik * st);
      if (t.value.variance()[static_cast<std::size_t>(k)] == Variance::upper) {
        for (int c = 0; c < d; ++c) val -= tc[base + static_cast<std::size_t>(c * st)] * v.grad(ik, c);
      } else {
        for (int c = 0; c < d; ++c) val += tc[base + static_cast<std::size_t>(c * st)] * v.grad(c, ik);
      }
    }
    out.components()[q] = val;
  }
  return out;
}

Tensor derivation_action(const Mat& m, const Tensor& t) {
  const int d = t.dim();
  if (m.rows() != d || m.cols() != d) throw TensorError("derivation_action: endomorphism dimension mismatch");
  const int r = t.rank();
  Tensor out(d, t.variance());
  if (r == 0) return out;
  const auto strides = strides_for(d, r);
  std::vector<int> idx(static_cast<std::size_t>(r));
  const auto tc = t.components();
  const auto ud = static_cast<std::size_t>(d);
  for (std::size_t q = 0; q < out.size(); ++q) {
    std::size_t rem = q;
    for (int k = r; k-- > 0;) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(rem % ud);
      rem /= ud;
    }
    double val = 0.0;
    for (int k = 0; k < r; ++k) {
      const int ik = idx[static_cast<std::size_t>(k)];
      const int st = strides[static_cast<std::size_t>(k)];
      const std::size_t base = q - static_cast<std::size_t>(ik * st);
      if (t.variance()[static_cast<std::size_t>(k)] == Variance::upper) {
        for (int h = 0; h < d; ++h) val += m(ik, h) * tc[base + static_cast<std::size_t>(h * st)];
      } else {
        for (int h = 0; h < d; ++h) val -= m(h, ik) * tc[base + static_cast<std::size_t>(h * st)];
      }
    }
    out.components()[q] = val;
  }
  return out;
}

Tensor christoffel(const ChartModel& model, std::span<const double> point) {
  return LocalGeometry(model, point, Depth::connection).christoffel();
}

Tensor covariant_derivative(const ChartModel& model, std::span<const double> point, const TensorField& field) {
  if (field.dim != model.dim()) throw TensorError("covariant_derivative: field dimension mismatch");
  const LocalGeometry geo(model, point, Depth::connection);
  return geo.covariant_derivative(field.evaluate_jet(point));
}

Tensor riemann(const ChartModel& model, std::span<const double> point) {
  return LocalGeometry(model, point, Depth::curvature).riemann();
}

std::pair<Tensor, double> ricci_and_scalar(const ChartModel& model, std::span<const double> point) {
  const LocalGeometry geo(model, point, Depth::curvature);
  return {geo.ricci(), geo.scalar_curvature()};
}

double sectional_curvature(const ChartModel& model, std::span<const double> point, const Vec& x, const Vec& y) {
  return LocalGeometry(model, point, Depth::curvature).sectional_curvature(x, y);
}

Tensor nabla_riemann(const ChartModel& model, std::span<const double> point) {
  return LocalGeometry(model, point, Depth::full).nabla_riemann();
}

Tensor lie_ops(const ChartModel& model, std::span<const double> point, const TensorField& x, const TensorField& t) {
  if (x.dim != model.dim() || t.dim != model.dim()) throw TensorError("lie_ops: field dimension mismatch");
  return lie_derivative(x.evaluate_jet(point), t.evaluate_jet(point));
}

Vec lie_bracket(std::span<const double> point, const TensorField& x, const TensorField& y) {
  if (y.variance.size() != 1 || y.variance[0] != Variance::upper)
    throw TensorError("lie_bracket: both arguments must be vector fields");
  return to_vec(lie_derivative(x.evaluate_jet(point), y.evaluate_jet(point)));
}

Tensor curvature_action(const LocalGeometry& geo, const Tensor& t, const Vec& x, const Vec& y) {
  return derivation_action(geo.curvature_operator(x, y), t);
}

Tensor curvature_action(const ChartModel& model, std::span<const double> point, const Tensor& t, const Vec& x,
                        const Vec& y) {
  return curvature_action(LocalGeometry(model, point, Depth::curvature), t, x, y);
}

Vec to_vec(const Tensor& t) {
  if (t.rank() != 1) throw TensorError("to_vec: expected a rank-1 tensor");
  return to_vec(t.components());
}

Vec to_vec(std::span<const double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace gk
