#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "gk/geometry.hpp"
#include "gk/model.hpp"
#include "gk/tensor.hpp"

namespace gk {

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejection of a vector that should be a unit vector orthogonal to every xi_i.
class NotFiberUnitError : public StructureError {
 public:
  NotFiberUnitError(const std::string& what, double leakage) : StructureError(what), leakage_(leakage) {}
  /// max(|g(X, xi_i)|, | |X| - 1 |)
  [[nodiscard]] double leakage() const noexcept { return leakage_; }

 private:
  double leakage_;
};

struct NormalityTensors {
  Tensor n1;               // N1^k_ab = [phi,phi]^k_ab + 2 sum_i d eta^i_ab xi_i^k
  std::vector<Tensor> n2;  // N2_i(X,Y) = 2 d eta^i(phi X, Y) - 2 d eta^i(phi Y, X)
};

/// The metric f-structure of a chart model evaluated at one point, on top of
/// the Levi-Civita geometry there.
class StructurePoint {
 public:
  StructurePoint(const ChartModel& model, std::span<const double> point, Depth depth = Depth::full);

  [[nodiscard]] const LocalGeometry& geometry() const noexcept { return geo_; }
  [[nodiscard]] const ChartModel& model() const noexcept { return geo_.model(); }
  [[nodiscard]] int n() const noexcept { return geo_.model().n; }
  [[nodiscard]] int s() const noexcept { return geo_.model().s; }
  [[nodiscard]] int dim() const noexcept { return geo_.dim(); }

  /// phi^a_b as a matrix acting on column vectors.
  [[nodiscard]] const Mat& phi() const noexcept { return phi_; }
  [[nodiscard]] const Vec& xi(int i) const { return xi_.at(static_cast<std::size_t>(i)); }
  /// Components eta^i_a.
  [[nodiscard]] const Vec& eta(int i) const { return eta_.at(static_cast<std::size_t>(i)); }
  /// Phi_ab = g(d_a, phi d_b)
  [[nodiscard]] const Tensor& fundamental_form() const noexcept { return Phi_; }
  [[nodiscard]] const Tensor& d_eta(int i) const { return d_eta_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] const Tensor& d_Phi() const noexcept { return d_Phi_; }
  /// (a,b,e) = (nabla_e phi)^a_b
  [[nodiscard]] const Tensor& nabla_phi() const noexcept { return nabla_phi_; }
  [[nodiscard]] const NormalityTensors& normality() const noexcept { return normality_; }
  /// Values and partials of the structure fields.
  [[nodiscard]] const TensorJet& phi_jet() const noexcept { return phi_jet_; }
  [[nodiscard]] const TensorJet& xi_jet(int i) const { return xi_jet_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] const TensorJet& eta_jet(int i) const { return eta_jet_.at(static_cast<std::size_t>(i)); }

  [[nodiscard]] Vec apply_phi(const Vec& x) const { return phi_ * x; }
  [[nodiscard]] Vec phi2(const Vec& x) const { return phi_ * (phi_ * x); }
  [[nodiscard]] double eta_of(int i, const Vec& x) const { return eta(i).dot(x); }
  /// sum_i eta^i(X)
  [[nodiscard]] double eta_sum(const Vec& x) const;
  /// sum_i xi_i
  [[nodiscard]] const Vec& xi_sum() const noexcept { return xi_sum_; }
  /// X - sum_i eta^i(X) xi_i
  [[nodiscard]] Vec project_fiber(const Vec& x) const;

  /// (nabla_X phi) Y
  [[nodiscard]] Vec nabla_phi(const Vec& x, const Vec& y) const;
  /// nabla_X xi_i
  [[nodiscard]] Vec nabla_xi(int i, const Vec& x) const;
  /// (nabla_X eta^i) Y
  [[nodiscard]] double nabla_eta(int i, const Vec& x, const Vec& y) const;

  [[nodiscard]] double form2(const Tensor& w, const Vec& x, const Vec& y) const;
  [[nodiscard]] double form3(const Tensor& w, const Vec& x, const Vec& y, const Vec& z) const;
  /// N1(X,Y) as a vector.
  [[nodiscard]] Vec n1(const Vec& x, const Vec& y) const;

 private:
  LocalGeometry geo_;
  Mat phi_;
  std::vector<Vec> xi_;
  std::vector<Vec> eta_;
  Vec xi_sum_;
  TensorJet phi_jet_;
  std::vector<TensorJet> xi_jet_;
  std::vector<TensorJet> eta_jet_;
  Tensor Phi_;
  std::vector<Tensor> d_eta_;
  Tensor d_Phi_;
  Tensor nabla_phi_;
  std::vector<Tensor> nabla_xi_;
  std::vector<Tensor> nabla_eta_;
  NormalityTensors normality_;
};

[[nodiscard]] Tensor fundamental_two_form(const ChartModel& model, std::span<const double> point);

/// |eta^1 ^ ... ^ eta^s ^ Phi^n| on the coordinate frame, with full
/// alternation normalized by 1/dim!.
[[nodiscard]] double volume_condition(const ChartModel& model, std::span<const double> point);
[[nodiscard]] double volume_condition(const StructurePoint& sp);

[[nodiscard]] NormalityTensors normality_tensors(const ChartModel& model, std::span<const double> point);

/// (nabla_X phi)Y - sum_i {g(phi X, Y) xi_i - eta^i(Y) phi X}
[[nodiscard]] Vec kenmotsu_defect(const StructurePoint& sp, const Vec& x, const Vec& y);
[[nodiscard]] Vec kenmotsu_defect(const ChartModel& model, std::span<const double> point, const Vec& x,
                                  const Vec& y);

/// Residual of the general formula for 2 g((nabla_X phi)Y, Z) on metric
/// f-manifolds in terms of dPhi, N1, N2 and d eta^i.
[[nodiscard]] double nabla_phi_formula_check(const StructurePoint& sp, const Vec& x, const Vec& y, const Vec& z);
[[nodiscard]] double nabla_phi_formula_check(const ChartModel& model, std::span<const double> point, const Vec& x,
                                             const Vec& y, const Vec& z);

/// K(X, phi X); throws NotFiberUnitError unless X is a unit vector
/// orthogonal to every xi_i (to 1e-10).
[[nodiscard]] double phi_sectional(const StructurePoint& sp, const Vec& x);
[[nodiscard]] double phi_sectional(const ChartModel& model, std::span<const double> point, const Vec& x);

/// P^a_bcd, P(X,Y)Z = R(X,Y)Z - 1/(dim-1) {S(Y,Z)X - S(X,Z)Y}
[[nodiscard]] Tensor projective_tensor(const LocalGeometry& geo);
[[nodiscard]] Tensor projective_tensor(const ChartModel& model, std::span<const double> point);

struct SemiSymmetryDefects {
  double rr = 0.0;  // max |(R(X,Y).R)(U,V)W|
  double rs = 0.0;  // max |(R(X,Y).S)(U,V)|
  double rp = 0.0;  // max |(R(X,Y).P)(U,V)W|
  /// g((R(X,xi_i).R)(X,phi X)phi X, xi_j) and the same with P, over unit fiber X
  double rr_special = 0.0;
  double rp_special = 0.0;
  /// max |rp_special - rr_special| per sample
  double special_gap = 0.0;
};

/// Sampled over `tuples` seeded random argument tuples plus the special
/// tuples (X, xi_i, X, phi X, phi X, xi_j).
[[nodiscard]] SemiSymmetryDefects semi_symmetry_defects(const StructurePoint& sp, std::uint64_t seed = 1,
                                                        int tuples = 20);
[[nodiscard]] SemiSymmetryDefects semi_symmetry_defects(const ChartModel& model, std::span<const double> point,
                                                        std::uint64_t seed = 1, int tuples = 20);

struct EtaParallelDefect {
  /// max |(nabla_X S)(phi Y, phi Z)|
  double definition = 0.0;
  /// max |(nabla_X S)(Y,Z) + 2n sum_i {g(X,Y) eta^i(Z) + g(X,Z) eta^i(Y)}
  ///       + sum_i {eta^i(Y) S(X,Z) + eta^i(Z) S(X,Y)}|
  double closed_form = 0.0;
};

[[nodiscard]] EtaParallelDefect eta_parallel_defect(const StructurePoint& sp, std::uint64_t seed = 1,
                                                    int tuples = 20);
[[nodiscard]] EtaParallelDefect eta_parallel_defect(const ChartModel& model, std::span<const double> point,
                                                    std::uint64_t seed = 1, int tuples = 20);

/// Adapted frame {E_1..E_n, phi E_1..phi E_n, xi_1..xi_s}. Throws
/// StructureError if the phi-invariant distribution is exhausted early.
[[nodiscard]] std::vector<Vec> f_basis(const StructurePoint& sp);
[[nodiscard]] std::vector<Vec> f_basis(const ChartModel& model, std::span<const double> point);

/// g-orthonormal frame from Gram-Schmidt on (xi_1..xi_s, d_0..d_{dim-1}),
/// skipping dependent vectors. Does not depend on phi.
[[nodiscard]] std::vector<Vec> orthonormal_frame(const StructurePoint& sp);

}  // namespace gk
