#include "gk/structure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gk/forms.hpp"
#include "gk/sampling.hpp"

namespace gk {
namespace {

constexpr double dependent_vector_tolerance = 1e-8;
constexpr double fiber_unit_tolerance = 1e-10;

// Two passes of modified Gram-Schmidt of v against an orthonormal set.
Vec orthogonalize(const LocalGeometry& geo, Vec v, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& u : basis) v -= geo.inner(v, u) * u;
  return v;
}

Vec basis_vector(int dim, int a) {
  Vec e = Vec::Zero(dim);
  e(a) = 1.0;
  return e;
}

Vec projective_apply(const LocalGeometry& geo, const Vec& x, const Vec& y, const Vec& z) {
  const double k = 1.0 / static_cast<double>(geo.dim() - 1);
  return geo.curvature(x, y, z) - k * (geo.ricci(y, z) * x - geo.ricci(x, z) * y);
}

Vec random_fiber_unit(const StructurePoint& sp, Rng& rng, const std::vector<Vec>& frame) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Vec v = sp.project_fiber(random_combination(rng, frame));
    const double nv = sp.geometry().norm(v);
    if (nv > 1e-3) return v / nv;
  }
  throw StructureError("could not draw a fiber vector; the structure distribution looks degenerate");
}

}  // namespace

StructurePoint::StructurePoint(const ChartModel& model, std::span<const double> point, Depth depth)
    : geo_(model, point, depth) {
  const ChartModel& m = geo_.model();
  const int d = geo_.dim();
  phi_jet_ = m.phi_field().evaluate_jet(point);
  phi_.resize(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) phi_(a, b) = phi_jet_.value(a, b);

  xi_sum_ = Vec::Zero(d);
  for (int i = 0; i < m.s; ++i) {
    xi_jet_.push_back(m.xi_field(i).evaluate_jet(point));
    eta_jet_.push_back(m.eta_field(i).evaluate_jet(point));
    xi_.push_back(to_vec(xi_jet_.back().value));
    eta_.push_back(to_vec(eta_jet_.back().value));
    xi_sum_ += xi_.back();
  }

  // Phi_ab = g_ac phi^c_b, partials by the product rule.
  TensorJet Phi_jet{Tensor(d, {Variance::lower, Variance::lower}),
                    Tensor(d, {Variance::lower, Variance::lower, Variance::lower})};
  const Tensor& dg = geo_.metric_grad();
  const Mat& g = geo_.metric();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double v = 0.0;
      for (int c = 0; c < d; ++c) v += g(a, c) * phi_(c, b);
      Phi_jet.value(a, b) = v;
      for (int e = 0; e < d; ++e) {
        double de = 0.0;
        for (int c = 0; c < d; ++c) de += dg(a, c, e) * phi_(c, b) + g(a, c) * phi_jet_.grad(c, b, e);
        Phi_jet.grad(a, b, e) = de;
      }
    }
  Phi_ = Phi_jet.value;
  d_Phi_ = exterior_derivative(Phi_jet);

  for (int i = 0; i < m.s; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    d_eta_.push_back(exterior_derivative(eta_jet_[ui]));
    nabla_xi_.push_back(geo_.covariant_derivative(xi_jet_[ui]));
    nabla_eta_.push_back(geo_.covariant_derivative(eta_jet_[ui]));
  }
  nabla_phi_ = geo_.covariant_derivative(phi_jet_);

  // [phi,phi]^k_ab = phi^h_a d_h phi^k_b - phi^h_b d_h phi^k_a + phi^k_h d_b phi^h_a - phi^k_h d_a phi^h_b
  const Tensor& dphi = phi_jet_.grad;
  normality_.n1 = Tensor(d, {Variance::upper, Variance::lower, Variance::lower});
  for (int k = 0; k < d; ++k)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        double v = 0.0;
        for (int h = 0; h < d; ++h)
          v += phi_(h, a) * dphi(k, b, h) - phi_(h, b) * dphi(k, a, h) + phi_(k, h) * dphi(h, a, b) -
               phi_(k, h) * dphi(h, b, a);
        for (int i = 0; i < m.s; ++i) v += 2.0 * d_eta_[static_cast<std::size_t>(i)](a, b) * xi_[static_cast<std::size_t>(i)](k);
        normality_.n1(k, a, b) = v;
      }
  for (int i = 0; i < m.s; ++i) {
    const Tensor& de = d_eta_[static_cast<std::size_t>(i)];
    Tensor n2(d, {Variance::lower, Variance::lower});
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        double v = 0.0;
        for (int c = 0; c < d; ++c) v += 2.0 * de(c, b) * phi_(c, a) - 2.0 * de(c, a) * phi_(c, b);
        n2(a, b) = v;
      }
    normality_.n2.push_back(std::move(n2));
  }
}

double StructurePoint::eta_sum(const Vec& x) const {
  double sum = 0.0;
  for (const auto& e : eta_) sum += e.dot(x);
  return sum;
}

Vec StructurePoint::project_fiber(const Vec& x) const {
  Vec v = x;
  for (int i = 0; i < s(); ++i) v -= eta_of(i, x) * xi(i);
  return v;
}

Vec StructurePoint::nabla_phi(const Vec& x, const Vec& y) const {
  const int d = dim();
  Vec out = Vec::Zero(d);
  for (int a = 0; a < d; ++a) {
    double sum = 0.0;
    for (int b = 0; b < d; ++b)
      for (int e = 0; e < d; ++e) sum += nabla_phi_(a, b, e) * y(b) * x(e);
    out(a) = sum;
  }
  return out;
}

Vec StructurePoint::nabla_xi(int i, const Vec& x) const {
  const Tensor& t = nabla_xi_.at(static_cast<std::size_t>(i));
  const int d = dim();
  Vec out = Vec::Zero(d);
  for (int a = 0; a < d; ++a)
    for (int e = 0; e < d; ++e) out(a) += t(a, e) * x(e);
  return out;
}

double StructurePoint::nabla_eta(int i, const Vec& x, const Vec& y) const {
  const Tensor& t = nabla_eta_.at(static_cast<std::size_t>(i));
  double sum = 0.0;
  for (int b = 0; b < dim(); ++b)
    for (int e = 0; e < dim(); ++e) sum += t(b, e) * y(b) * x(e);
  return sum;
}

double StructurePoint::form2(const Tensor& w, const Vec& x, const Vec& y) const {
  double sum = 0.0;
  for (int a = 0; a < dim(); ++a)
    for (int b = 0; b < dim(); ++b) sum += w(a, b) * x(a) * y(b);
  return sum;
}

double StructurePoint::form3(const Tensor& w, const Vec& x, const Vec& y, const Vec& z) const {
  double sum = 0.0;
  for (int a = 0; a < dim(); ++a) {
    if (x(a) == 0.0) continue;
    for (int b = 0; b < dim(); ++b)
      for (int c = 0; c < dim(); ++c) sum += w(a, b, c) * x(a) * y(b) * z(c);
  }
  return sum;
}

Vec StructurePoint::n1(const Vec& x, const Vec& y) const {
  const int d = dim();
  Vec out = Vec::Zero(d);
  for (int k = 0; k < d; ++k)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) out(k) += normality_.n1(k, a, b) * x(a) * y(b);
  return out;
}

Tensor fundamental_two_form(const ChartModel& model, std::span<const double> point) {
  return StructurePoint(model, point, Depth::connection).fundamental_form();
}

double volume_condition(const StructurePoint& sp) {
  std::vector<Tensor> factors;
  for (int i = 0; i < sp.s(); ++i) factors.push_back(Tensor::covector(std::span<const double>(sp.eta(i).data(), static_cast<std::size_t>(sp.dim()))));
  for (int k = 0; k < sp.n(); ++k) factors.push_back(sp.fundamental_form());
  return std::abs(top_form_component(factors));
}

double volume_condition(const ChartModel& model, std::span<const double> point) {
  return volume_condition(StructurePoint(model, point, Depth::connection));
}

NormalityTensors normality_tensors(const ChartModel& model, std::span<const double> point) {
  return StructurePoint(model, point, Depth::connection).normality();
}

Vec kenmotsu_defect(const StructurePoint& sp, const Vec& x, const Vec& y) {
  const Vec px = sp.apply_phi(x);
  const double gpxy = sp.geometry().inner(px, y);
  return sp.nabla_phi(x, y) - (gpxy * sp.xi_sum() - sp.eta_sum(y) * px);
}

Vec kenmotsu_defect(const ChartModel& model, std::span<const double> point, const Vec& x, const Vec& y) {
  return kenmotsu_defect(StructurePoint(model, point, Depth::connection), x, y);
}

double nabla_phi_formula_check(const StructurePoint& sp, const Vec& x, const Vec& y, const Vec& z) {
  const LocalGeometry& geo = sp.geometry();
  const Vec py = sp.apply_phi(y);
  const Vec pz = sp.apply_phi(z);
  const Vec px = sp.apply_phi(x);
  const double lhs = 2.0 * geo.inner(sp.nabla_phi(x, y), z);
  double rhs = 3.0 * sp.form3(sp.d_Phi(), x, py, pz) - 3.0 * sp.form3(sp.d_Phi(), x, y, z) +
               geo.inner(sp.n1(y, z), px);
  for (int i = 0; i < sp.s(); ++i) {
    const Tensor& de = sp.d_eta(i);
    rhs += sp.form2(sp.normality().n2[static_cast<std::size_t>(i)], y, z) * sp.eta_of(i, x) +
           2.0 * sp.form2(de, py, x) * sp.eta_of(i, z) - 2.0 * sp.form2(de, pz, x) * sp.eta_of(i, y);
  }
  return std::abs(lhs - rhs);
}

double nabla_phi_formula_check(const ChartModel& model, std::span<const double> point, const Vec& x, const Vec& y,
                               const Vec& z) {
  return nabla_phi_formula_check(StructurePoint(model, point, Depth::connection), x, y, z);
}

double phi_sectional(const StructurePoint& sp, const Vec& x) {
  const LocalGeometry& geo = sp.geometry();
  double leakage = std::abs(geo.norm(x) - 1.0);
  for (int i = 0; i < sp.s(); ++i) leakage = std::max(leakage, std::abs(geo.inner(x, sp.xi(i))));
  if (!(leakage <= fiber_unit_tolerance))
    throw NotFiberUnitError("phi_sectional: X must be a unit vector orthogonal to every xi (leakage " +
                                std::to_string(leakage) + ")",
                            leakage);
  return geo.sectional_curvature(x, sp.apply_phi(x));
}

double phi_sectional(const ChartModel& model, std::span<const double> point, const Vec& x) {
  return phi_sectional(StructurePoint(model, point, Depth::curvature), x);
}

Tensor projective_tensor(const LocalGeometry& geo) {
  const int d = geo.dim();
  Tensor p = geo.riemann();
  const Tensor& ric = geo.ricci();
  const double k = 1.0 / static_cast<double>(d - 1);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          const double corr = (a == c ? ric(e, b) : 0.0) - (a == e ? ric(c, b) : 0.0);
          p(a, b, c, e) -= k * corr;
        }
  return p;
}

Tensor projective_tensor(const ChartModel& model, std::span<const double> point) {
  return projective_tensor(LocalGeometry(model, point, Depth::curvature));
}

SemiSymmetryDefects semi_symmetry_defects(const StructurePoint& sp, std::uint64_t seed, int tuples) {
  const LocalGeometry& geo = sp.geometry();
  const auto frame = orthonormal_frame(sp);
  Rng rng(seed);
  SemiSymmetryDefects out;

  const auto rdot = [&](const Mat& m, const Vec& u, const Vec& v, const Vec& w) {
    return Vec(m * geo.curvature(u, v, w) - geo.curvature(m * u, v, w) - geo.curvature(u, m * v, w) -
               geo.curvature(u, v, m * w));
  };
  const auto pdot = [&](const Mat& m, const Vec& u, const Vec& v, const Vec& w) {
    return Vec(m * projective_apply(geo, u, v, w) - projective_apply(geo, m * u, v, w) -
               projective_apply(geo, u, m * v, w) - projective_apply(geo, u, v, m * w));
  };

  for (int t = 0; t < tuples; ++t) {
    const Vec x = random_combination(rng, frame);
    const Vec y = random_combination(rng, frame);
    const Vec u = random_combination(rng, frame);
    const Vec v = random_combination(rng, frame);
    const Vec w = random_combination(rng, frame);
    const Mat m = geo.curvature_operator(x, y);
    out.rr = std::max(out.rr, geo.norm(rdot(m, u, v, w)));
    out.rs = std::max(out.rs, std::abs(-geo.ricci(m * u, v) - geo.ricci(u, m * v)));
    out.rp = std::max(out.rp, geo.norm(pdot(m, u, v, w)));
  }

  const Vec x = random_fiber_unit(sp, rng, frame);
  const Vec px = sp.apply_phi(x);
  for (int i = 0; i < sp.s(); ++i) {
    const Mat m = geo.curvature_operator(x, sp.xi(i));
    const Vec rr = rdot(m, x, px, px);
    const Vec rp = pdot(m, x, px, px);
    for (int j = 0; j < sp.s(); ++j) {
      const double a = geo.inner(rr, sp.xi(j));
      const double b = geo.inner(rp, sp.xi(j));
      out.rr_special = std::max(out.rr_special, std::abs(a));
      out.rp_special = std::max(out.rp_special, std::abs(b));
      out.special_gap = std::max(out.special_gap, std::abs(b - a));
    }
    out.rr = std::max(out.rr, geo.norm(rr));
    out.rp = std::max(out.rp, geo.norm(rp));
  }
  return out;
}

SemiSymmetryDefects semi_symmetry_defects(const ChartModel& model, std::span<const double> point, std::uint64_t seed,
                                          int tuples) {
  return semi_symmetry_defects(StructurePoint(model, point, Depth::curvature), seed, tuples);
}

EtaParallelDefect eta_parallel_defect(const StructurePoint& sp, std::uint64_t seed, int tuples) {
  const LocalGeometry& geo = sp.geometry();
  const auto frame = orthonormal_frame(sp);
  Rng rng(seed);
  const double n2 = 2.0 * sp.n();
  EtaParallelDefect out;
  for (int t = 0; t < tuples; ++t) {
    const Vec x = random_combination(rng, frame);
    const Vec y = random_combination(rng, frame);
    const Vec z = random_combination(rng, frame);
    out.definition = std::max(out.definition, std::abs(geo.nabla_ricci(x, sp.apply_phi(y), sp.apply_phi(z))));
    const double ty = sp.eta_sum(y);
    const double tz = sp.eta_sum(z);
    const double closed = geo.nabla_ricci(x, y, z) + n2 * (geo.inner(x, y) * tz + geo.inner(x, z) * ty) +
                          ty * geo.ricci(x, z) + tz * geo.ricci(x, y);
    out.closed_form = std::max(out.closed_form, std::abs(closed));
  }
  return out;
}

EtaParallelDefect eta_parallel_defect(const ChartModel& model, std::span<const double> point, std::uint64_t seed,
                                      int tuples) {
  return eta_parallel_defect(StructurePoint(model, point, Depth::full), seed, tuples);
}

std::vector<Vec> f_basis(const StructurePoint& sp) {
  const LocalGeometry& geo = sp.geometry();
  const int d = sp.dim();
  std::vector<Vec> es;
  std::vector<Vec> phies;
  std::vector<Vec> used;
  for (int a = 0; a < d && static_cast<int>(es.size()) < sp.n(); ++a) {
    Vec v = orthogonalize(geo, sp.project_fiber(basis_vector(d, a)), used);
    const double nv = geo.norm(v);
    if (nv < dependent_vector_tolerance) continue;
    v /= nv;
    const Vec pv = sp.apply_phi(v);
    if (geo.norm(pv) < dependent_vector_tolerance)
      throw StructureError("f_basis: phi annihilates a vector of the structure distribution");
    es.push_back(v);
    phies.push_back(pv);
    used.push_back(v);
    used.push_back(pv);
  }
  if (static_cast<int>(es.size()) < sp.n())
    throw StructureError("f_basis: the phi-invariant distribution was exhausted after " + std::to_string(es.size()) +
                         " of " + std::to_string(sp.n()) + " vectors");
  std::vector<Vec> frame = es;
  frame.insert(frame.end(), phies.begin(), phies.end());
  for (int i = 0; i < sp.s(); ++i) frame.push_back(sp.xi(i));
  return frame;
}

std::vector<Vec> f_basis(const ChartModel& model, std::span<const double> point) {
  return f_basis(StructurePoint(model, point, Depth::connection));
}

std::vector<Vec> orthonormal_frame(const StructurePoint& sp) {
  const LocalGeometry& geo = sp.geometry();
  const int d = sp.dim();
  std::vector<Vec> frame;
  const auto offer = [&](const Vec& c) {
    if (static_cast<int>(frame.size()) == d) return;
    Vec v = orthogonalize(geo, c, frame);
    const double nv = geo.norm(v);
    if (nv < dependent_vector_tolerance) return;
    frame.push_back(v / nv);
  };
  for (int i = 0; i < sp.s(); ++i) offer(sp.xi(i));
  for (int a = 0; a < d; ++a) offer(basis_vector(d, a));
  return frame;
}

}  // namespace gk
