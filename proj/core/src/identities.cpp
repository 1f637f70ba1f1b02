#include "gk/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

#include "gk/sampling.hpp"
#include "gk/structure.hpp"

namespace gk {
namespace {

constexpr double algebraic_tol = 1e-10;
constexpr double first_order_tol = 1e-9;
constexpr double curvature_tol = 1e-8;
constexpr int frame_tuples = 8;

struct Tuple {
  Vec x, y, z, w, v;
};

// Running max that lets NaN through so a broken evaluation cannot pass.
struct Acc {
  double value = 0.0;
  int samples = 0;
  void add(double r) {
    ++samples;
    if (std::isnan(value)) return;
    if (std::isnan(r) || r > value) value = r;
  }
};

class PointContext {
 public:
  PointContext(const ChartModel& model, std::span<const double> point, Depth depth, std::uint64_t seed, int tuples)
      : sp(model, point, depth), geo(sp.geometry()), seed_(seed) {
    Rng rng(seed);
    const auto frame = orthonormal_frame(sp);
    for (int t = 0; t < tuples; ++t) {
      Tuple tp;
      for (Vec* v : {&tp.x, &tp.y, &tp.z, &tp.w, &tp.v}) *v = random_combination(rng, frame);
      this->tuples.push_back(std::move(tp));
    }
    const int m = static_cast<int>(frame.size());
    for (int t = 0; t < frame_tuples; ++t) {
      Tuple tp;
      for (Vec* v : {&tp.x, &tp.y, &tp.z, &tp.w, &tp.v}) *v = frame[static_cast<std::size_t>(rng.index(m))];
      this->tuples.push_back(std::move(tp));
    }
    for (int t = 0; t < tuples; ++t) {
      const Vec v = sp.project_fiber(random_combination(rng, frame));
      const double nv = geo.norm(v);
      if (!(nv > 1e-3)) {
        fiber_error_ = "no fiber direction available at this point";
        fiber_.clear();
        break;
      }
      fiber_.push_back(v / nv);
    }
  }

  const std::vector<Vec>& fiber() const {
    if (!fiber_error_.empty()) throw StructureError(fiber_error_);
    return fiber_;
  }

  const SemiSymmetryDefects& semi() const {
    if (!semi_) semi_ = semi_symmetry_defects(sp, derive_seed(seed_, 1), static_cast<int>(tuples.size()));
    return *semi_;
  }

  const EtaParallelDefect& eta_parallel() const {
    if (!eta_) eta_ = eta_parallel_defect(sp, derive_seed(seed_, 2), static_cast<int>(tuples.size()));
    return *eta_;
  }

  // L_{xi_i} of phi, g, and eta^j.
  const Tensor& lie_phi(int i) const {
    fill_lie();
    return lie_phi_[static_cast<std::size_t>(i)];
  }
  const Tensor& lie_g(int i) const {
    fill_lie();
    return lie_g_[static_cast<std::size_t>(i)];
  }
  const Tensor& lie_eta(int i, int j) const {
    fill_lie();
    return lie_eta_[static_cast<std::size_t>(i * sp.s() + j)];
  }

  double theta(const Vec& x) const { return sp.eta_sum(x); }
  double g(const Vec& x, const Vec& y) const { return geo.inner(x, y); }
  double norm(const Vec& x) const { return geo.norm(x); }

  StructurePoint sp;
  const LocalGeometry& geo;
  std::vector<Tuple> tuples;

 private:
  void fill_lie() const {
    if (!lie_phi_.empty()) return;
    const TensorJet gj{geo.metric_tensor(), geo.metric_grad()};
    for (int i = 0; i < sp.s(); ++i) {
      lie_phi_.push_back(lie_derivative(sp.xi_jet(i), sp.phi_jet()));
      lie_g_.push_back(lie_derivative(sp.xi_jet(i), gj));
      for (int j = 0; j < sp.s(); ++j) lie_eta_.push_back(lie_derivative(sp.xi_jet(i), sp.eta_jet(j)));
    }
  }

  std::uint64_t seed_;
  std::vector<Vec> fiber_;
  std::string fiber_error_;
  mutable std::optional<SemiSymmetryDefects> semi_;
  mutable std::optional<EtaParallelDefect> eta_;
  mutable std::vector<Tensor> lie_phi_;
  mutable std::vector<Tensor> lie_g_;
  mutable std::vector<Tensor> lie_eta_;
};

Vec apply11(const Tensor& t, const Vec& y) {
  const int d = t.dim();
  Vec out = Vec::Zero(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out(a) += t(a, b) * y(b);
  return out;
}

double apply02(const Tensor& t, const Vec& x, const Vec& y) {
  const int d = t.dim();
  double sum = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) sum += t(a, b) * x(a) * y(b);
  return sum;
}

double apply01(const Tensor& t, const Vec& x) {
  double sum = 0.0;
  for (int a = 0; a < t.dim(); ++a) sum += t(a) * x(a);
  return sum;
}

using Eval = std::function<void(const PointContext&, Acc&)>;

bool always(const ChartModel&) { return true; }
bool never(const ChartModel&) { return false; }
bool only_s1(const ChartModel& m) { return m.s == 1; }
bool warped_models(const ChartModel& m) { return m.warped_product; }

struct Entry {
  CheckInfo info;
  Eval eval;
};

std::vector<Entry> build_entries() {
  std::vector<Entry> e;
  const auto add = [&](std::string id, std::string group, std::string description, double tol, Depth depth,
                       bool (*asserted)(const ChartModel&), Eval eval, Bound bound = Bound::upper) {
    e.push_back({CheckInfo{std::move(id), std::move(group), std::move(description), tol, bound, depth, asserted},
                 std::move(eval)});
  };
  const Depth conn = Depth::connection;
  const Depth curv = Depth::curvature;
  const Depth full = Depth::full;

  // Metric f-structure axioms.
  add("axiom_phi2", "axioms", "phi^2 X = -X + sum_i eta^i(X) xi_i", algebraic_tol, conn, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) {
          Vec r = c.sp.phi2(t.x) + t.x;
          for (int i = 0; i < c.sp.s(); ++i) r -= c.sp.eta_of(i, t.x) * c.sp.xi(i);
          acc.add(c.norm(r));
        }
      });
  add("axiom_eta_xi", "axioms", "eta^i(xi_j) = delta_ij", algebraic_tol, conn, always,
      [](const PointContext& c, Acc& acc) {
        for (int i = 0; i < c.sp.s(); ++i)
          for (int j = 0; j < c.sp.s(); ++j) acc.add(std::abs(c.sp.eta_of(i, c.sp.xi(j)) - (i == j ? 1.0 : 0.0)));
      });
  add("axiom_metric", "axioms", "g(phi X, phi Y) = g(X,Y) - sum_i eta^i(X) eta^i(Y)", algebraic_tol, conn, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) {
          double r = c.g(c.sp.apply_phi(t.x), c.sp.apply_phi(t.y)) - c.g(t.x, t.y);
          for (int i = 0; i < c.sp.s(); ++i) r += c.sp.eta_of(i, t.x) * c.sp.eta_of(i, t.y);
          acc.add(std::abs(r));
        }
      });
  add("axiom_eta_g", "axioms", "eta^i(X) = g(X, xi_i)", algebraic_tol, conn, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples)
          for (int i = 0; i < c.sp.s(); ++i) acc.add(std::abs(c.sp.eta_of(i, t.x) - c.g(t.x, c.sp.xi(i))));
      });
  add("axiom_phi_skew", "axioms", "g(X, phi Y) = -g(phi X, Y)", algebraic_tol, conn, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples)
          acc.add(std::abs(c.g(t.x, c.sp.apply_phi(t.y)) + c.g(c.sp.apply_phi(t.x), t.y)));
      });
  add("axiom_phi_xi", "axioms", "phi xi_i = 0", algebraic_tol, conn, always, [](const PointContext& c, Acc& acc) {
    for (int i = 0; i < c.sp.s(); ++i) acc.add(c.norm(c.sp.apply_phi(c.sp.xi(i))));
  });
  add("axiom_eta_phi", "axioms", "eta^i(phi X) = 0", algebraic_tol, conn, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples)
          for (int i = 0; i < c.sp.s(); ++i) acc.add(std::abs(c.sp.eta_of(i, c.sp.apply_phi(t.x))));
      });
  add(
      "volume", "volume", "|eta^1 ^ ... ^ eta^s ^ Phi^n| on the coordinate frame stays above the bound", 1e-12,
      conn, always, [](const PointContext& c, Acc& acc) { acc.add(volume_condition(c.sp)); }, Bound::lower);

  // Normality and the defining conditions.
  add("normality_n1", "normality", "N1(X,Y) = [phi,phi](X,Y) + 2 sum_i d eta^i(X,Y) xi_i = 0", first_order_tol, conn,
      always, [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) acc.add(c.norm(c.sp.n1(t.x, t.y)));
      });
  add("normality_n2", "normality", "N2_i(X,Y) = 2 d eta^i(phi X, Y) - 2 d eta^i(phi Y, X) = 0", first_order_tol,
      conn, always, [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples)
          for (int i = 0; i < c.sp.s(); ++i)
            acc.add(std::abs(c.sp.form2(c.sp.normality().n2[static_cast<std::size_t>(i)], t.x, t.y)));
      });
  add("gak_deta", "gak", "d eta^i = 0", first_order_tol, conn, always, [](const PointContext& c, Acc& acc) {
    for (const auto& t : c.tuples)
      for (int i = 0; i < c.sp.s(); ++i) acc.add(std::abs(c.sp.form2(c.sp.d_eta(i), t.x, t.y)));
  });
  add("gak_dphi", "gak", "dPhi = 2 sum_i eta^i ^ Phi", first_order_tol, conn, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) {
          // (eta ^ Phi)(X,Y,Z) = 1/3 {eta(X) Phi(Y,Z) - eta(Y) Phi(X,Z) + eta(Z) Phi(X,Y)}
          const Tensor& Phi = c.sp.fundamental_form();
          const double wedge = (c.theta(t.x) * c.sp.form2(Phi, t.y, t.z) - c.theta(t.y) * c.sp.form2(Phi, t.x, t.z) +
                                c.theta(t.z) * c.sp.form2(Phi, t.x, t.y)) /
                               3.0;
          acc.add(std::abs(c.sp.form3(c.sp.d_Phi(), t.x, t.y, t.z) - 2.0 * wedge));
        }
      });
  add("eq9", "kenmotsu", "(nabla_X phi)Y = sum_i {g(phi X, Y) xi_i - eta^i(Y) phi X}", first_order_tol, conn, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) acc.add(c.norm(kenmotsu_defect(c.sp, t.x, t.y)));
      });
  add("eq1", "formula",
      "2 g((nabla_X phi)Y, Z) = 3 dPhi(X, phi Y, phi Z) - 3 dPhi(X,Y,Z) + g(N1(Y,Z), phi X) + "
      "sum_i {N2_i(Y,Z) eta^i(X) + 2 d eta^i(phi Y, X) eta^i(Z) - 2 d eta^i(phi Z, X) eta^i(Y)}",
      curvature_tol, conn, always, [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) acc.add(nabla_phi_formula_check(c.sp, t.x, t.y, t.z));
      });

  // First-order identities.
  add("eq10", "identity", "nabla_X xi_j = -phi^2 X", first_order_tol, conn, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples)
          for (int j = 0; j < c.sp.s(); ++j) acc.add(c.norm(c.sp.nabla_xi(j, t.x) + c.sp.phi2(t.x)));
      });
  add("lem21", "identity", "nabla_{xi_j} phi = 0, nabla_{xi_j} xi_i = 0, L_{xi_i} phi = 0, L_{xi_i} eta^j = 0",
      first_order_tol, conn, always, [](const PointContext& c, Acc& acc) {
        const int s = c.sp.s();
        for (const auto& t : c.tuples)
          for (int i = 0; i < s; ++i) {
            acc.add(c.norm(c.sp.nabla_phi(c.sp.xi(i), t.y)));
            acc.add(c.norm(apply11(c.lie_phi(i), t.y)));
            for (int j = 0; j < s; ++j) acc.add(std::abs(apply01(c.lie_eta(i, j), t.y)));
          }
        for (int i = 0; i < s; ++i)
          for (int j = 0; j < s; ++j) acc.add(c.norm(c.sp.nabla_xi(i, c.sp.xi(j))));
      });
  add("eq11", "identity", "(L_{xi_i} g)(X,Y) = 2 {g(X,Y) - sum_j eta^j(X) eta^j(Y)}", first_order_tol, conn, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) {
          double rhs = c.g(t.x, t.y);
          for (int j = 0; j < c.sp.s(); ++j) rhs -= c.sp.eta_of(j, t.x) * c.sp.eta_of(j, t.y);
          for (int i = 0; i < c.sp.s(); ++i) acc.add(std::abs(apply02(c.lie_g(i), t.x, t.y) - 2.0 * rhs));
        }
      });
  add("eq12", "identity", "(nabla_X eta^i) Y = g(X,Y) - sum_j eta^j(X) eta^j(Y)", first_order_tol, conn, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) {
          double rhs = c.g(t.x, t.y);
          for (int j = 0; j < c.sp.s(); ++j) rhs -= c.sp.eta_of(j, t.x) * c.sp.eta_of(j, t.y);
          for (int i = 0; i < c.sp.s(); ++i) acc.add(std::abs(c.sp.nabla_eta(i, t.x, t.y) - rhs));
        }
      });
  add("thm23", "frame", "[xi_i, xi_j] = 0, nabla_{xi_i} xi_j = 0, d eta^i = 0", first_order_tol, conn, always,
      [](const PointContext& c, Acc& acc) {
        const int s = c.sp.s();
        for (int i = 0; i < s; ++i)
          for (int j = 0; j < s; ++j) {
            acc.add(c.norm(to_vec(lie_derivative(c.sp.xi_jet(i), c.sp.xi_jet(j)))));
            acc.add(c.norm(c.sp.nabla_xi(j, c.sp.xi(i))));
          }
        for (const auto& t : c.tuples)
          for (int i = 0; i < s; ++i) acc.add(std::abs(c.sp.form2(c.sp.d_eta(i), t.x, t.y)));
      });
  add("fiber_kahler", "frame", "the fiber part of (nabla_X phi)Y vanishes for X, Y orthogonal to every xi",
      curvature_tol, conn, always, [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) {
          const Vec x = c.sp.project_fiber(t.x);
          const Vec y = c.sp.project_fiber(t.y);
          acc.add(c.norm(c.sp.project_fiber(c.sp.nabla_phi(x, y))));
        }
      });

  // Curvature identities.
  add("eq13", "identity", "R(X,Y) xi_i = sum_j {eta^j(Y) phi^2 X - eta^j(X) phi^2 Y}", curvature_tol, curv, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) {
          const Vec rhs = c.theta(t.y) * c.sp.phi2(t.x) - c.theta(t.x) * c.sp.phi2(t.y);
          for (int i = 0; i < c.sp.s(); ++i) acc.add(c.norm(c.geo.curvature(t.x, t.y, c.sp.xi(i)) - rhs));
        }
      });
  add("eq14", "identity", "R(X, xi_i) Y = sum_j {eta^j(Y) phi^2 X - g(X, phi^2 Y) xi_j}", curvature_tol, curv, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) {
          const Vec rhs = c.theta(t.y) * c.sp.phi2(t.x) - c.g(t.x, c.sp.phi2(t.y)) * c.sp.xi_sum();
          for (int i = 0; i < c.sp.s(); ++i) acc.add(c.norm(c.geo.curvature(t.x, c.sp.xi(i), t.y) - rhs));
        }
      });
  add("eq15", "identity", "R(X, xi_j) xi_i = phi^2 X and R(xi_k, xi_j) xi_i = 0", curvature_tol, curv, always,
      [](const PointContext& c, Acc& acc) {
        const int s = c.sp.s();
        for (const auto& t : c.tuples) {
          const Vec p2 = c.sp.phi2(t.x);
          for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) acc.add(c.norm(c.geo.curvature(t.x, c.sp.xi(j), c.sp.xi(i)) - p2));
        }
        for (int i = 0; i < s; ++i)
          for (int j = 0; j < s; ++j)
            for (int k = 0; k < s; ++k) acc.add(c.norm(c.geo.curvature(c.sp.xi(k), c.sp.xi(j), c.sp.xi(i))));
      });
  add("eq16", "identity", "S(X, xi_i) = -2n sum_j eta^j(X)", curvature_tol, curv, always,
      [](const PointContext& c, Acc& acc) {
        const double n2 = 2.0 * c.sp.n();
        for (const auto& t : c.tuples)
          for (int i = 0; i < c.sp.s(); ++i) acc.add(std::abs(c.geo.ricci(t.x, c.sp.xi(i)) + n2 * c.theta(t.x)));
      });
  add("eq17", "identity", "S(xi_k, xi_i) = -2n for every pair (k, i)", curvature_tol, curv, always,
      [](const PointContext& c, Acc& acc) {
        const double n2 = 2.0 * c.sp.n();
        for (int k = 0; k < c.sp.s(); ++k)
          for (int i = 0; i < c.sp.s(); ++i) acc.add(std::abs(c.geo.ricci(c.sp.xi(k), c.sp.xi(i)) + n2));
      });
  add("eq18corrected", "identity", "S(phi X, phi Y) = S(X,Y) + 2n sum_{i,j} eta^i(X) eta^j(Y)", curvature_tol, curv,
      always, [](const PointContext& c, Acc& acc) {
        const double n2 = 2.0 * c.sp.n();
        for (const auto& t : c.tuples)
          acc.add(std::abs(c.geo.ricci(c.sp.apply_phi(t.x), c.sp.apply_phi(t.y)) - c.geo.ricci(t.x, t.y) -
                           n2 * c.theta(t.x) * c.theta(t.y)));
      });
  add("eq18printed", "identity", "S(phi X, phi Y) = S(X,Y) + 2n sum_i eta^i(X) eta^i(Y) (single sum)",
      curvature_tol, curv, never, [](const PointContext& c, Acc& acc) {
        const double n2 = 2.0 * c.sp.n();
        const auto probe = [&](const Vec& x, const Vec& y) {
          double single = 0.0;
          for (int i = 0; i < c.sp.s(); ++i) single += c.sp.eta_of(i, x) * c.sp.eta_of(i, y);
          acc.add(std::abs(c.geo.ricci(c.sp.apply_phi(x), c.sp.apply_phi(y)) - c.geo.ricci(x, y) - n2 * single));
        };
        for (const auto& t : c.tuples) probe(t.x, t.y);
        for (int i = 0; i < c.sp.s(); ++i)
          for (int j = 0; j < c.sp.s(); ++j) probe(c.sp.xi(i), c.sp.xi(j));
      });
  add("eq19", "identity", "S(X,Y) = -2n {s g(phi X, phi Y) + sum_{i,j} eta^i(X) eta^j(Y)}", curvature_tol, curv,
      warped_models, [](const PointContext& c, Acc& acc) {
        const double n2 = 2.0 * c.sp.n();
        const double s = c.sp.s();
        for (const auto& t : c.tuples)
          acc.add(std::abs(c.geo.ricci(t.x, t.y) +
                           n2 * (s * c.g(c.sp.apply_phi(t.x), c.sp.apply_phi(t.y)) + c.theta(t.x) * c.theta(t.y))));
      });
  add("thm32", "identity",
      "(nabla_Z R)(X,Y) xi_i = s g(Z,X) Y - s g(Z,Y) X - R(X,Y) Z + s sum_h eta^h(Z) {eta^h(Y) X - eta^h(X) Y} + "
      "sum_l eta^l(Z) R(X,Y) xi_l",
      curvature_tol, full, only_s1, [](const PointContext& c, Acc& acc) {
        const int s = c.sp.s();
        for (const auto& t : c.tuples) {
          Vec rhs = s * c.g(t.z, t.x) * t.y - s * c.g(t.z, t.y) * t.x - c.geo.curvature(t.x, t.y, t.z);
          for (int h = 0; h < s; ++h) {
            rhs += s * c.sp.eta_of(h, t.z) * (c.sp.eta_of(h, t.y) * t.x - c.sp.eta_of(h, t.x) * t.y);
            rhs += c.sp.eta_of(h, t.z) * c.geo.curvature(t.x, t.y, c.sp.xi(h));
          }
          for (int i = 0; i < s; ++i) acc.add(c.norm(c.geo.nabla_curvature(t.z, t.x, t.y, c.sp.xi(i)) - rhs));
        }
      });
  add("thm33a", "identity",
      "R(X,Y) phi Z - phi R(X,Y) Z = g(Y,Z) phi X - g(X,Z) phi Y - g(Y, phi Z) X + g(X, phi Z) Y", curvature_tol, curv,
      only_s1, [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) {
          const Vec pz = c.sp.apply_phi(t.z);
          const Vec lhs = c.geo.curvature(t.x, t.y, pz) - c.sp.apply_phi(c.geo.curvature(t.x, t.y, t.z));
          const Vec rhs = c.g(t.y, t.z) * c.sp.apply_phi(t.x) - c.g(t.x, t.z) * c.sp.apply_phi(t.y) -
                          c.g(t.y, pz) * t.x + c.g(t.x, pz) * t.y;
          acc.add(c.norm(lhs - rhs));
        }
      });
  add("thm33b", "identity",
      "R(phi X, phi Y) Z = R(X,Y) Z + g(Y,Z) X - g(X,Z) Y + g(Y, phi Z) phi X - g(X, phi Z) phi Y", curvature_tol,
      curv, only_s1, [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) {
          const Vec px = c.sp.apply_phi(t.x);
          const Vec py = c.sp.apply_phi(t.y);
          const Vec pz = c.sp.apply_phi(t.z);
          const Vec rhs = c.geo.curvature(t.x, t.y, t.z) + c.g(t.y, t.z) * t.x - c.g(t.x, t.z) * t.y +
                          c.g(t.y, pz) * px - c.g(t.x, pz) * py;
          acc.add(c.norm(c.geo.curvature(px, py, t.z) - rhs));
        }
      });
  add("thm43", "identity",
      "(nabla_{phi X} S)(phi Y, phi Z) = (nabla_{phi X} S)(Y,Z) - sum_i eta^i(Y) {S(X, phi Z) + 2n g(X, phi Z)} - "
      "sum_i eta^i(Z) {S(X, phi Y) + 2n g(X, phi Y)}",
      curvature_tol, full, never, [](const PointContext& c, Acc& acc) {
        const double n2 = 2.0 * c.sp.n();
        for (const auto& t : c.tuples) {
          const Vec px = c.sp.apply_phi(t.x);
          const Vec py = c.sp.apply_phi(t.y);
          const Vec pz = c.sp.apply_phi(t.z);
          const double rhs = c.geo.nabla_ricci(px, t.y, t.z) -
                             c.theta(t.y) * (c.geo.ricci(t.x, pz) + n2 * c.g(t.x, pz)) -
                             c.theta(t.z) * (c.geo.ricci(t.x, py) + n2 * c.g(t.x, py));
          acc.add(std::abs(c.geo.nabla_ricci(px, py, pz) - rhs));
        }
      });
  add("cor42", "identity",
      "(nabla_X S)(phi Y, phi Z) = (nabla_X S)(Y,Z) + 2n sum_i {g(X,Y) eta^i(Z) + g(X,Z) eta^i(Y)} + "
      "sum_i {eta^i(Y) S(X,Z) + eta^i(Z) S(X,Y)}",
      curvature_tol, full, never, [](const PointContext& c, Acc& acc) {
        const double n2 = 2.0 * c.sp.n();
        for (const auto& t : c.tuples) {
          const double ty = c.theta(t.y);
          const double tz = c.theta(t.z);
          const double rhs = c.geo.nabla_ricci(t.x, t.y, t.z) + n2 * (c.g(t.x, t.y) * tz + c.g(t.x, t.z) * ty) +
                             ty * c.geo.ricci(t.x, t.z) + tz * c.geo.ricci(t.x, t.y);
          acc.add(std::abs(c.geo.nabla_ricci(t.x, c.sp.apply_phi(t.y), c.sp.apply_phi(t.z)) - rhs));
        }
      });

  // Consequences of local symmetry and the s = 1 specialization.
  add("cor32", "curvature", "(nabla_{xi_j} R)(X,Y) xi_i = 0", curvature_tol, full, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples)
          for (int i = 0; i < c.sp.s(); ++i)
            for (int j = 0; j < c.sp.s(); ++j)
              acc.add(c.norm(c.geo.nabla_curvature(c.sp.xi(j), t.x, t.y, c.sp.xi(i))));
      });
  add("cor32l", "curvature", "(nabla_Z R)(X,Y) xi_i = s g(Z,X) Y - s g(Z,Y) X - R(X,Y) Z for Z orthogonal to every xi",
      curvature_tol, full, only_s1, [](const PointContext& c, Acc& acc) {
        const int s = c.sp.s();
        for (const auto& t : c.tuples) {
          const Vec z = c.sp.project_fiber(t.z);
          const Vec rhs = s * c.g(z, t.x) * t.y - s * c.g(z, t.y) * t.x - c.geo.curvature(t.x, t.y, z);
          for (int i = 0; i < s; ++i) acc.add(c.norm(c.geo.nabla_curvature(z, t.x, t.y, c.sp.xi(i)) - rhs));
        }
      });
  add("cor34", "curvature", "R(X,Y) Z = s {g(Z,X) Y - g(Z,Y) X}", curvature_tol, curv, only_s1,
      [](const PointContext& c, Acc& acc) {
        const double s = c.sp.s();
        for (const auto& t : c.tuples)
          acc.add(c.norm(c.geo.curvature(t.x, t.y, t.z) - s * (c.g(t.z, t.x) * t.y - c.g(t.z, t.y) * t.x)));
      });
  add("nabla_r", "curvature", "nabla R = 0", curvature_tol, full, only_s1, [](const PointContext& c, Acc& acc) {
    for (const auto& t : c.tuples) acc.add(c.norm(c.geo.nabla_curvature(t.z, t.x, t.y, t.w)));
  });
  add("einstein", "curvature", "S = -2n g", curvature_tol, curv, only_s1, [](const PointContext& c, Acc& acc) {
    const double n2 = 2.0 * c.sp.n();
    for (const auto& t : c.tuples) acc.add(std::abs(c.geo.ricci(t.x, t.y) + n2 * c.g(t.x, t.y)));
  });
  add("projective_flat", "projective", "P(X,Y) Z = R(X,Y) Z - 1/(2n+s-1) {S(Y,Z) X - S(X,Z) Y} = 0",
      curvature_tol, curv, only_s1, [](const PointContext& c, Acc& acc) {
        const double k = 1.0 / static_cast<double>(c.sp.dim() - 1);
        for (const auto& t : c.tuples)
          acc.add(c.norm(c.geo.curvature(t.x, t.y, t.z) -
                         k * (c.geo.ricci(t.y, t.z) * t.x - c.geo.ricci(t.x, t.z) * t.y)));
      });
  add("phi_sectional", "sectional", "K(X, phi X) = -s for unit X orthogonal to every xi", curvature_tol, curv,
      always, [](const PointContext& c, Acc& acc) {
        for (const auto& x : c.fiber()) acc.add(std::abs(phi_sectional(c.sp, x) + c.sp.s()));
      });

  // Semi-symmetry.
  add("semi_rr", "semi", "R(X,Y) . R = 0", curvature_tol, curv, only_s1,
      [](const PointContext& c, Acc& acc) { acc.add(c.semi().rr); });
  add("semi_rs", "semi", "R(X,Y) . S = 0", curvature_tol, curv, only_s1,
      [](const PointContext& c, Acc& acc) { acc.add(c.semi().rs); });
  add("semi_rp", "semi", "R(X,Y) . P = 0", curvature_tol, curv, only_s1,
      [](const PointContext& c, Acc& acc) { acc.add(c.semi().rp); });
  add("semi_special", "semi",
      "(R.P)(X, xi_i, X, phi X, phi X, xi_j) = (R.R)(X, xi_i, X, phi X, phi X, xi_j) for unit X orthogonal to every xi",
      curvature_tol, curv, always, [](const PointContext& c, Acc& acc) { acc.add(c.semi().special_gap); });
  add("thm51_tuple", "semi", "(R.R)(X, xi_i, X, phi X, phi X, xi_j) for unit X orthogonal to every xi", curvature_tol,
      curv, never, [](const PointContext& c, Acc& acc) { acc.add(c.semi().rr_special); });
  add("semi_rg", "semi", "R(X,Y) . g = 0", algebraic_tol, curv, always, [](const PointContext& c, Acc& acc) {
    for (const auto& t : c.tuples) {
      const Mat m = c.geo.curvature_operator(t.x, t.y);
      acc.add(std::abs(c.g(m * t.z, t.w) + c.g(t.z, m * t.w)));
    }
  });

  // Ricci parallelism along the structure.
  add("eta_parallel", "eta", "(nabla_X S)(phi Y, phi Z) = 0", curvature_tol, full, only_s1,
      [](const PointContext& c, Acc& acc) { acc.add(c.eta_parallel().definition); });
  add("thm44", "eta",
      "(nabla_X S)(Y,Z) = -2n sum_i {g(X,Y) eta^i(Z) + g(X,Z) eta^i(Y)} - sum_i {eta^i(Y) S(X,Z) + eta^i(Z) S(X,Y)}",
      curvature_tol, full, only_s1, [](const PointContext& c, Acc& acc) { acc.add(c.eta_parallel().closed_form); });

  // Internal consistency of the Levi-Civita machinery.
  add("metricity", "consistency", "nabla g = 0", algebraic_tol, conn, always, [](const PointContext& c, Acc& acc) {
    const Tensor ng = c.geo.covariant_derivative(TensorJet{c.geo.metric_tensor(), c.geo.metric_grad()});
    const int d = c.sp.dim();
    for (const auto& t : c.tuples) {
      double sum = 0.0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int e = 0; e < d; ++e) sum += ng(a, b, e) * t.y(a) * t.z(b) * t.x(e);
      acc.add(std::abs(sum));
    }
  });
  add("riemann_symmetries", "consistency",
      "g(R(X,Y)Z,W) = -g(R(X,Y)W,Z) = g(R(Z,W)X,Y), first Bianchi identity, S symmetric", first_order_tol, curv, always,
      [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples) {
          const double rxyzw = c.g(c.geo.curvature(t.x, t.y, t.z), t.w);
          acc.add(std::abs(rxyzw + c.g(c.geo.curvature(t.x, t.y, t.w), t.z)));
          acc.add(std::abs(rxyzw - c.g(c.geo.curvature(t.z, t.w, t.x), t.y)));
          acc.add(c.norm(c.geo.curvature(t.x, t.y, t.z) + c.geo.curvature(t.y, t.z, t.x) +
                         c.geo.curvature(t.z, t.x, t.y)));
          acc.add(std::abs(c.geo.ricci(t.x, t.y) - c.geo.ricci(t.y, t.x)));
        }
      });
  add("bianchi2", "consistency", "(nabla_X R)(Y,Z) + (nabla_Y R)(Z,X) + (nabla_Z R)(X,Y) = 0", curvature_tol, full,
      always, [](const PointContext& c, Acc& acc) {
        for (const auto& t : c.tuples)
          acc.add(c.norm(c.geo.nabla_curvature(t.x, t.y, t.z, t.w) + c.geo.nabla_curvature(t.y, t.z, t.x, t.w) +
                         c.geo.nabla_curvature(t.z, t.x, t.y, t.w)));
      });

  std::sort(e.begin(), e.end(), [](const Entry& a, const Entry& b) { return a.info.id < b.info.id; });
  return e;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = build_entries();
  return e;
}

struct Partial {
  Acc acc;
  std::string error;
};

std::vector<Partial> evaluate_point(const ChartModel& model, std::span<const double> point, std::size_t index,
                                    const std::vector<const Entry*>& selected, Depth depth,
                                    const SuiteOptions& options) {
  std::vector<Partial> out(selected.size());
  const std::string where = "point " + std::to_string(index) + ": ";
  std::optional<PointContext> ctx;
  try {
    ctx.emplace(model, point, depth, derive_seed(options.seed, index), options.tuples);
  } catch (const std::exception& ex) {
    for (auto& p : out) p.error = where + ex.what();
    return out;
  }
  for (std::size_t k = 0; k < selected.size(); ++k) {
    try {
      selected[k]->eval(*ctx, out[k].acc);
    } catch (const std::exception& ex) {
      out[k].error = where + ex.what();
    }
  }
  return out;
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const CheckInfo* find_check(std::string_view id) {
  for (const auto& info : check_registry())
    if (info.id == id) return &info;
  return nullptr;
}

std::vector<std::string> check_ids_in_group(std::string_view group) {
  std::vector<std::string> ids;
  for (const auto& info : check_registry())
    if (info.group == group) ids.push_back(info.id);
  return ids;
}

std::vector<IdentityCheck> run_checks(const ChartModel& model, std::span<const std::vector<double>> points,
                                      const SuiteOptions& options) {
  model.validate();
  if (points.empty()) throw std::invalid_argument("run_checks: need at least one point");
  if (options.tuples < 1) throw std::invalid_argument("run_checks: need at least one argument tuple per point");
  for (const auto& [id, tol] : options.tolerances) {
    if (!find_check(id)) throw std::invalid_argument("unknown check id '" + id + "' in tolerance override");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance for '" + id + "' must be positive");
  }

  std::vector<const Entry*> selected;
  for (const auto& id : options.checks)
    if (!find_check(id)) throw std::invalid_argument("unknown check id '" + id + "'");
  for (const auto& e : entries()) {
    if (!options.checks.empty() &&
        std::find(options.checks.begin(), options.checks.end(), e.info.id) == options.checks.end())
      continue;
    selected.push_back(&e);
  }
  Depth depth = Depth::connection;
  for (const Entry* e : selected)
    if (static_cast<int>(e->info.depth) > static_cast<int>(depth)) depth = e->info.depth;

  std::vector<std::vector<Partial>> per_point(points.size());
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t p = w; p < points.size(); p += threads)
          per_point[p] = evaluate_point(model, points[p], p, selected, depth, options);
      });
    }
  }

  std::vector<IdentityCheck> out;
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const CheckInfo& info = selected[k]->info;
    IdentityCheck chk;
    chk.id = info.id;
    chk.bound = info.bound;
    chk.status = info.asserted(model) ? CheckStatus::assertion : CheckStatus::diagnostic;
    if (chk.status == CheckStatus::assertion) {
      const auto it = options.tolerances.find(info.id);
      chk.tolerance = it != options.tolerances.end() ? it->second : info.tolerance;
    }
    std::string error;
    bool first = true;
    for (const auto& pp : per_point) {
      const Partial& part = pp[k];
      if (!part.error.empty()) {
        if (error.empty()) error = part.error;
        continue;
      }
      chk.samples += part.acc.samples;
      const double v = part.acc.value;
      if (first) {
        chk.residual = v;
        first = false;
      } else if (std::isnan(chk.residual) || std::isnan(v)) {
        chk.residual = std::numeric_limits<double>::quiet_NaN();
      } else {
        chk.residual = info.bound == Bound::upper ? std::max(chk.residual, v) : std::min(chk.residual, v);
      }
    }
    if (first) chk.residual = std::numeric_limits<double>::quiet_NaN();
    chk.notes = error.empty() ? info.description : "error at " + error;
    if (!error.empty()) {
      chk.result = CheckResult::error;
    } else if (chk.status == CheckStatus::diagnostic) {
      chk.result = CheckResult::diagnostic;
    } else {
      const double tol = *chk.tolerance;
      const bool ok = info.bound == Bound::upper ? chk.residual < tol : chk.residual > tol;
      chk.result = ok ? CheckResult::pass : CheckResult::fail;
    }
    out.push_back(std::move(chk));
  }
  return out;
}

namespace {

std::vector<IdentityCheck> run_groups(const ChartModel& model, std::span<const std::vector<double>> points,
                                      std::uint64_t seed, std::initializer_list<std::string_view> groups) {
  SuiteOptions opt;
  opt.seed = seed;
  for (auto g : groups)
    for (auto& id : check_ids_in_group(g)) opt.checks.push_back(id);
  return run_checks(model, points, opt);
}

}  // namespace

std::vector<IdentityCheck> axioms_check(const ChartModel& model, std::span<const std::vector<double>> points,
                                        std::uint64_t seed) {
  return run_groups(model, points, seed, {"axioms"});
}

std::vector<IdentityCheck> gak_check(const ChartModel& model, std::span<const std::vector<double>> points,
                                     std::uint64_t seed) {
  return run_groups(model, points, seed, {"gak"});
}

std::vector<IdentityCheck> identity_suite(const ChartModel& model, std::span<const std::vector<double>> points,
                                          std::uint64_t seed) {
  return run_groups(model, points, seed, {"identity"});
}

const char* to_string(CheckStatus s) noexcept { return s == CheckStatus::assertion ? "assert" : "diagnostic"; }

const char* to_string(Bound b) noexcept { return b == Bound::upper ? "upper" : "lower"; }

const char* to_string(CheckResult r) noexcept {
  switch (r) {
    case CheckResult::pass: return "pass";
    case CheckResult::fail: return "fail";
    case CheckResult::diagnostic: return "diagnostic";
    case CheckResult::error: return "error";
  }
  return "?";
}

}  // namespace gk
