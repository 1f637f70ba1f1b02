#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "fd_oracle.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "gk/geometry.hpp"
#include "gk/models.hpp"
#include "gk/structure.hpp"

namespace gk {
namespace {

std::vector<ChartModel> all_models() {
  WarpedProductSpec spec;
  spec.n = 2;
  spec.s = 3;
  spec.k = 2.0;
  return {build_example_2_2(2, 3), build_example_2_2(1, 1), build_example_2_3(), build_warped(spec),
          build_control(2, 2)};
}

double form2(const Tensor& t, const Vec& x, const Vec& y) {
  double v = 0.0;
  for (int a = 0; a < t.dim(); ++a)
    for (int b = 0; b < t.dim(); ++b) v += t(a, b) * x(a) * y(b);
  return v;
}

Vec basis(int dim, int a) {
  Vec v = Vec::Zero(dim);
  v(a) = 1.0;
  return v;
}

TEST(Christoffel, HyperbolicValuesAtOrigin) {
  const auto model = build_example_2_2(1, 1);
  const std::array<double, 3> origin{0.0, 0.0, 0.0};
  const Tensor gamma = christoffel(model, origin);
  // coordinates (x, y, z)
  EXPECT_NEAR(gamma(2, 0, 0), -1.0, 1e-15);
  EXPECT_NEAR(gamma(0, 0, 2), 1.0, 1e-15);
  EXPECT_NEAR(gamma(0, 2, 0), 1.0, 1e-15);
}

TEST(Christoffel, FlatControlVanishesExactly) {
  const auto model = build_control(2, 2);
  Rng rng(1);
  const auto p = testing::random_point(rng, model.dim());
  EXPECT_EQ(max_abs(christoffel(model, p)), 0.0);
  EXPECT_EQ(max_abs(riemann(model, p)), 0.0);
  EXPECT_EQ(max_abs(ricci_and_scalar(model, p).first), 0.0);
  EXPECT_EQ(max_abs(nabla_riemann(model, p)), 0.0);
}

TEST(Christoffel, MatchesFiniteDifferenceOracle) {
  for (const auto& model : all_models()) {
    SCOPED_TRACE(model.name);
    const auto points = sample_points(model.dim(), 20, 99);
    for (const auto& p : points) {
      const Tensor gamma = christoffel(model, p);
      const auto fd = oracle::christoffel(model, p);
      for (int a = 0; a < model.dim(); ++a)
        for (int b = 0; b < model.dim(); ++b)
          for (int c = 0; c < model.dim(); ++c) {
            const double want = fd[static_cast<std::size_t>(a)](b, c);
            EXPECT_NEAR(gamma(a, b, c), want, 1e-6 * (1.0 + std::abs(want)));
            EXPECT_EQ(gamma(a, b, c), gamma(a, c, b));
          }
    }
  }
}

TEST(Christoffel, MetricGradientMatchesFiniteDifferences) {
  const auto model = build_example_2_3(0.7, -1.3);
  for (const auto& p : sample_points(model.dim(), 5, 4)) {
    const LocalGeometry geo(model, p, Depth::connection);
    const auto fd = oracle::metric_grad(model, p);
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b)
        for (int e = 0; e < 7; ++e) {
          const double want = fd[static_cast<std::size_t>(e)](a, b);
          EXPECT_NEAR(geo.metric_grad()(a, b, e), want, 1e-6 * (1.0 + std::abs(want)));
        }
  }
}

TEST(Christoffel, SingularMetricIsReported) {
  ChartModel m = build_control(1, 1);
  m.g[0] = Field::coordinate(0);
  const std::array<double, 3> p{0.0, 0.1, 0.2};
  try {
    (void)christoffel(m, p);
    FAIL() << "expected SingularMetricError";
  } catch (const SingularMetricError& e) {
    EXPECT_GT(e.condition(), 1e14);
  }
}

// Koszul results for the orthonormal frame of example22. The frame
// derivative of X_i along itself is -sum xi_a: g(nabla_X X, xi) = -g(X, nabla_X xi)
// = -g(X, X) = -1.
TEST(CovariantDerivative, Example22FrameConnection) {
  const int n = 2;
  const int s = 3;
  const auto model = build_example_2_2(n, s);
  const auto frame = testing::example_2_2_frame(n, s);
  for (const auto& p : sample_points(model.dim(), 10, 5)) {
    const LocalGeometry geo(model, p, Depth::connection);
    Vec xi_sum = Vec::Zero(model.dim());
    for (const auto& xi : frame.xi) xi_sum += to_vec(xi.evaluate(p));
    for (int i = 0; i < n; ++i) {
      const Vec xi_vec = to_vec(frame.x[static_cast<std::size_t>(i)].evaluate(p));
      const Vec xx = geo.covariant_derivative(xi_vec, frame.x[static_cast<std::size_t>(i)].evaluate_jet(p));
      EXPECT_LT((xx + xi_sum).norm(), 1e-9);
      for (const auto& xi : frame.xi)
        EXPECT_LT((geo.covariant_derivative(xi_vec, xi.evaluate_jet(p)) - xi_vec).norm(), 1e-9);
      for (int j = 0; j < n; ++j) {
        if (j != i) {
          EXPECT_LT(geo.covariant_derivative(xi_vec, frame.x[static_cast<std::size_t>(j)].evaluate_jet(p)).norm(),
                    1e-9);
        }
        EXPECT_LT(geo.covariant_derivative(xi_vec, frame.y[static_cast<std::size_t>(j)].evaluate_jet(p)).norm(),
                  1e-9);
      }
    }
  }
}

TEST(CovariantDerivative, MetricIsParallel) {
  for (const auto& model : all_models()) {
    for (const auto& p : sample_points(model.dim(), 5, 8)) {
      EXPECT_LT(max_abs(covariant_derivative(model, p, model.metric_field())), 1e-10) << model.name;
    }
  }
}

TEST(CovariantDerivative, EtaDerivativeOnExample22) {
  const auto model = build_example_2_2(2, 3);
  Rng rng(4);
  for (const auto& p : sample_points(model.dim(), 5, 9)) {
    const StructurePoint sp(model, p, Depth::connection);
    for (int i = 0; i < 3; ++i) {
      const Tensor ne = covariant_derivative(model, p, model.eta_field(i));
      for (int t = 0; t < 5; ++t) {
        const Vec x = testing::random_vec(rng, 7);
        const Vec y = testing::random_vec(rng, 7);
        double lhs = 0.0;
        for (int a = 0; a < 7; ++a)
          for (int e = 0; e < 7; ++e) lhs += ne(a, e) * y(a) * x(e);
        double rhs = sp.geometry().inner(x, y);
        for (int j = 0; j < 3; ++j) rhs -= sp.eta_of(j, x) * sp.eta_of(j, y);
        EXPECT_NEAR(lhs, rhs, 1e-9);
      }
    }
  }
}

TEST(CovariantDerivative, XiAlongXiVanishes) {
  const auto model = build_example_2_2(2, 3);
  for (const auto& p : sample_points(model.dim(), 5, 10)) {
    const LocalGeometry geo(model, p, Depth::connection);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Vec xj = to_vec(model.xi_field(j).evaluate(p));
        EXPECT_LT(geo.covariant_derivative(xj, model.xi_field(i).evaluate_jet(p)).norm(), 1e-9);
      }
  }
}

TEST(Riemann, StructureVectorsCommuteUnderCurvature) {
  const auto model = build_example_2_2(2, 3);
  for (const auto& p : sample_points(model.dim(), 5, 11)) {
    const StructurePoint sp(model, p, Depth::curvature);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          EXPECT_LT(sp.geometry().curvature(sp.xi(k), sp.xi(j), sp.xi(i)).norm(), 1e-9);
  }
}

// R(X, xi_j) xi_i = phi^2 X = -X for fiber X. Pins the sign convention.
TEST(Riemann, SignConventionLock) {
  for (int s = 1; s <= 3; ++s) {
    const auto model = build_example_2_2(2, s);
    Rng rng(static_cast<std::uint64_t>(s));
    for (const auto& p : sample_points(model.dim(), 5, 12)) {
      const StructurePoint sp(model, p, Depth::curvature);
      const Vec x = sp.project_fiber(testing::random_vec(rng, model.dim()));
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
          EXPECT_LT((sp.geometry().curvature(x, sp.xi(j), sp.xi(i)) + x).norm(), 1e-9 * (1.0 + x.norm()));
    }
  }
}

TEST(Riemann, MatchesFiniteDifferenceCurvature) {
  Rng rng(13);
  for (const auto& model : all_models()) {
    SCOPED_TRACE(model.name);
    for (const auto& p : sample_points(model.dim(), 3, 14)) {
      const LocalGeometry geo(model, p, Depth::curvature);
      for (int t = 0; t < 3; ++t) {
        const Vec x = testing::random_vec(rng, model.dim());
        const Vec y = testing::random_vec(rng, model.dim());
        const Vec z = testing::random_vec(rng, model.dim());
        const Vec want = oracle::curvature(model, p, x, y, z);
        EXPECT_LT((geo.curvature(x, y, z) - want).cwiseAbs().maxCoeff(), 1e-5 * (1.0 + want.norm()));
      }
    }
  }
}

TEST(Riemann, BundleSymmetriesOnEveryModel) {
  for (const auto& model : all_models()) {
    SCOPED_TRACE(model.name);
    for (const auto& p : sample_points(model.dim(), 4, 15)) {
      const LocalGeometry geo(model, p, Depth::curvature);
      const CurvatureBundle b = geo.bundle();
      const int d = model.dim();
      const Mat& g = geo.metric();
      auto lowered = [&](int a, int bb, int c, int dd) {
        double v = 0.0;
        for (int e = 0; e < d; ++e) v += g(a, e) * b.riemann(e, bb, c, dd);
        return v;
      };
      for (int a = 0; a < d; ++a)
        for (int bb = 0; bb < d; ++bb)
          for (int c = 0; c < d; ++c)
            for (int dd = 0; dd < d; ++dd) {
              EXPECT_EQ(b.riemann(a, bb, c, dd), -b.riemann(a, bb, dd, c));
              EXPECT_NEAR(b.riemann(a, bb, c, dd) + b.riemann(a, c, dd, bb) + b.riemann(a, dd, bb, c), 0.0, 1e-9);
              const double r = lowered(a, bb, c, dd);
              EXPECT_NEAR(r, -lowered(bb, a, c, dd), 1e-9);
              EXPECT_NEAR(r, lowered(c, dd, a, bb), 1e-9);
            }
      for (int a = 0; a < d; ++a)
        for (int bb = 0; bb < d; ++bb) EXPECT_NEAR(b.ricci(a, bb), b.ricci(bb, a), 1e-9);
    }
  }
}

TEST(Riemann, SecondBianchiIdentity) {
  Rng rng(16);
  for (const auto& model : all_models()) {
    for (const auto& p : sample_points(model.dim(), 3, 16)) {
      const LocalGeometry geo(model, p);
      for (int t = 0; t < 5; ++t) {
        const Vec x = testing::random_vec(rng, model.dim());
        const Vec y = testing::random_vec(rng, model.dim());
        const Vec z = testing::random_vec(rng, model.dim());
        const Vec w = testing::random_vec(rng, model.dim());
        const Vec sum = geo.nabla_curvature(x, y, z, w) + geo.nabla_curvature(y, z, x, w) +
                        geo.nabla_curvature(z, x, y, w);
        EXPECT_LT(sum.norm(), 1e-8) << model.name;
      }
    }
  }
}

TEST(Riemann, HyperbolicModelIsLocallySymmetric) {
  const auto model = build_example_2_2(1, 1);
  for (const auto& p : sample_points(3, 10, 17)) EXPECT_LT(max_abs(nabla_riemann(model, p)), 1e-8);
}

TEST(Riemann, DepthIsEnforced) {
  const auto model = build_example_2_2(1, 1);
  const std::array<double, 3> p{0.0, 0.0, 0.0};
  const LocalGeometry geo(model, p, Depth::connection);
  EXPECT_THROW((void)geo.riemann(), std::logic_error);
  const LocalGeometry geo2(model, p, Depth::curvature);
  EXPECT_THROW((void)geo2.nabla_riemann(), std::logic_error);
}

TEST(Ricci, StructureValuesOnExample22) {
  const auto model = build_example_2_2(2, 3);
  for (const auto& p : sample_points(7, 5, 18)) {
    const LocalGeometry geo(model, p, Depth::curvature);
    EXPECT_NEAR(geo.ricci(basis(7, 4), basis(7, 5)), -4.0, 1e-12);
    EXPECT_NEAR(geo.ricci(basis(7, 4), basis(7, 4)), -4.0, 1e-12);
  }
}

TEST(Ricci, WarpedFiberValue) {
  WarpedProductSpec spec;
  spec.n = 2;
  spec.s = 3;
  spec.k = 2.0;
  const auto model = build_warped(spec);
  Rng rng(19);
  for (const auto& p : sample_points(7, 5, 19)) {
    const StructurePoint sp(model, p, Depth::curvature);
    Vec u = sp.project_fiber(testing::random_vec(rng, 7));
    u /= sp.geometry().norm(u);
    EXPECT_NEAR(sp.geometry().ricci(u, u), -12.0, 1e-9);
  }
}

// S(X,Y) = sum_k g(R(E_k, X)Y, E_k) over an orthonormal frame.
TEST(Ricci, FrameTraceMatchesContraction) {
  Rng rng(20);
  for (const auto& model : all_models()) {
    for (const auto& p : sample_points(model.dim(), 3, 20)) {
      const StructurePoint sp(model, p, Depth::curvature);
      const auto frame = orthonormal_frame(sp);
      const Vec x = testing::random_vec(rng, model.dim());
      const Vec y = testing::random_vec(rng, model.dim());
      double trace = 0.0;
      for (const Vec& e : frame) trace += sp.geometry().inner(sp.geometry().curvature(e, x, y), e);
      EXPECT_NEAR(trace, sp.geometry().ricci(x, y), 1e-9) << model.name;
    }
  }
}

TEST(Sectional, HyperbolicPlanes) {
  const auto model = build_example_2_2(1, 1);
  Rng rng(21);
  for (const auto& p : sample_points(3, 10, 21)) {
    EXPECT_NEAR(sectional_curvature(model, p, basis(3, 0), basis(3, 2)), -1.0, 1e-12);
    const StructurePoint sp(model, p, Depth::curvature);
    Vec x = sp.project_fiber(testing::random_vec(rng, 3));
    x /= sp.geometry().norm(x);
    EXPECT_NEAR(sp.geometry().sectional_curvature(x, sp.apply_phi(x)), -1.0, 1e-12);
    EXPECT_NEAR(oracle::sectional(model, p, basis(3, 0), basis(3, 2)), -1.0, 1e-5);
  }
}

TEST(Sectional, FiberStructurePlaneOnExample22) {
  const auto model = build_example_2_2(2, 3);
  Rng rng(22);
  for (const auto& p : sample_points(7, 5, 22)) {
    const StructurePoint sp(model, p, Depth::curvature);
    Vec x = sp.project_fiber(testing::random_vec(rng, 7));
    x /= sp.geometry().norm(x);
    EXPECT_NEAR(sp.geometry().sectional_curvature(x, sp.xi(0)), -1.0, 1e-9);
  }
}

TEST(Sectional, FlatControlIsZero) {
  const auto model = build_control(1, 2);
  Rng rng(23);
  const auto p = testing::random_point(rng, 4);
  EXPECT_EQ(sectional_curvature(model, p, testing::random_vec(rng, 4), testing::random_vec(rng, 4)), 0.0);
}

TEST(Sectional, DegeneratePlaneIsRejected) {
  const auto model = build_example_2_2(1, 1);
  const std::array<double, 3> p{0.1, 0.2, 0.3};
  const Vec x = basis(3, 0);
  EXPECT_THROW((void)sectional_curvature(model, p, x, 2.0 * x), DegeneratePlaneError);
}

// g -> c g leaves Gamma unchanged and scales K by 1/c.
TEST(Scaling, ConstantRescalingOfMetric) {
  const auto model = build_example_2_2(2, 3);
  const auto scaled = testing::scaled_metric(model, 4.0);
  Rng rng(24);
  for (const auto& p : sample_points(7, 5, 24)) {
    Tensor diff = christoffel(scaled, p);
    diff -= christoffel(model, p);
    EXPECT_LT(max_abs(diff), 1e-9);
    const Vec x = testing::random_vec(rng, 7);
    const Vec y = testing::random_vec(rng, 7);
    EXPECT_NEAR(sectional_curvature(scaled, p, x, y), sectional_curvature(model, p, x, y) / 4.0, 1e-9);
  }
}

TEST(Lie, Example22FrameBrackets) {
  const auto frame = testing::example_2_2_frame(2, 3);
  for (const auto& p : sample_points(7, 5, 25)) {
    for (const auto& x : frame.x) {
      const Vec xv = to_vec(x.evaluate(p));
      for (const auto& xi : frame.xi) EXPECT_LT((lie_bracket(p, x, xi) - xv).norm(), 1e-9);
      EXPECT_EQ(lie_bracket(p, x, x).norm(), 0.0);
    }
  }
}

TEST(Lie, MetricAlongStructureVector) {
  const auto model = build_example_2_2(2, 3);
  Rng rng(26);
  for (const auto& p : sample_points(7, 5, 26)) {
    const StructurePoint sp(model, p, Depth::connection);
    const Tensor lg = lie_ops(model, p, model.xi_field(0), model.metric_field());
    Vec x = sp.project_fiber(testing::random_vec(rng, 7));
    x /= sp.geometry().norm(x);
    EXPECT_NEAR(form2(lg, x, x), 2.0, 1e-9);
  }
}

TEST(CurvatureAction, MetricIsAnnihilated) {
  Rng rng(27);
  for (const auto& model : all_models()) {
    for (const auto& p : sample_points(model.dim(), 3, 27)) {
      const LocalGeometry geo(model, p, Depth::curvature);
      const Tensor rg =
          curvature_action(geo, geo.metric_tensor(), testing::random_vec(rng, model.dim()),
                           testing::random_vec(rng, model.dim()));
      EXPECT_LT(max_abs(rg), 1e-10) << model.name;
    }
  }
}

TEST(CurvatureAction, ScalarMapsToZero) {
  const auto model = build_example_2_2(1, 1);
  const std::array<double, 3> p{0.1, 0.1, 0.1};
  const Tensor t = curvature_action(model, p, Tensor::scalar(3, 5.0), basis(3, 0), basis(3, 2));
  EXPECT_EQ(t.rank(), 0);
  EXPECT_EQ(t.components()[0], 0.0);
}

TEST(CurvatureAction, HyperbolicModelIsSemiSymmetric) {
  const auto model = build_example_2_2(1, 1);
  Rng rng(28);
  for (const auto& p : sample_points(3, 5, 28)) {
    const LocalGeometry geo(model, p, Depth::curvature);
    const Tensor rr =
        curvature_action(geo, geo.riemann(), testing::random_vec(rng, 3), testing::random_vec(rng, 3));
    EXPECT_LT(max_abs(rr), 1e-8);
  }
}

}  // namespace
}  // namespace gk
