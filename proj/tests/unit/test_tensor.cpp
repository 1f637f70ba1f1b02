#include <gtest/gtest.h>

#include <array>

#include "generators.hpp"
#include "gk/geometry.hpp"
#include "gk/models.hpp"
#include "gk/tensor.hpp"

namespace gk {
namespace {

using V = Variance;

Tensor random_tensor(Rng& rng, int dim, std::vector<Variance> variance) {
  Tensor t(dim, std::move(variance));
  for (double& c : t.components()) c = rng.uniform(-1.0, 1.0);
  return t;
}

TEST(Contract, TraceOfIdentityIsDimension) {
  for (int d = 1; d <= 6; ++d) {
    const Tensor t = contract(Tensor::identity(d), 0, 1);
    EXPECT_EQ(t.rank(), 0);
    EXPECT_DOUBLE_EQ(t.components()[0], d);
  }
}

TEST(Contract, MetricTimesInverseIsKronecker) {
  const auto model = build_example_2_2(1, 2);
  const std::array<double, 4> p{0.1, -0.2, 0.3, 0.05};
  const LocalGeometry geo(model, p, Depth::connection);
  const Tensor t = contract(outer(geo.metric_tensor(), geo.inverse_metric_tensor()), 1, 2);
  ASSERT_EQ(t.variance(), (std::vector<V>{V::lower, V::upper}));
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(t(a, c), a == c ? 1.0 : 0.0, 1e-14);
}

TEST(Contract, RicciFromRiemannOnHyperbolicModel) {
  const auto model = build_example_2_2(1, 1);
  const std::array<double, 3> origin{0.0, 0.0, 0.0};
  const Tensor s = contract(riemann(model, origin), 0, 2);
  // xi = d/dz is the third coordinate vector.
  EXPECT_NEAR(s(2, 2), -2.0, 1e-12);
}

TEST(Contract, SameVarianceNeedsMetric) {
  const Tensor g(2, {V::lower, V::lower}, {1, 0, 0, 1});
  EXPECT_THROW((void)contract(g, 0, 1), TensorError);
  const Tensor ginv(2, {V::upper, V::upper}, {1, 0, 0, 1});
  EXPECT_DOUBLE_EQ(contract(g, 0, 1, &ginv).components()[0], 2.0);
}

TEST(Contract, RejectsBadSlots) {
  const Tensor t = Tensor::identity(3);
  EXPECT_THROW((void)contract(t, 0, 0), TensorError);
  EXPECT_THROW((void)contract(t, 0, 2), TensorError);
}

TEST(Antisymmetrize, SymmetricInputVanishes) {
  const Tensor g(3, {V::lower, V::lower}, {2, 1, 0, 1, 3, -1, 0, -1, 5});
  const std::array<int, 2> slots{0, 1};
  EXPECT_EQ(max_abs(antisymmetrize(g, slots)), 0.0);
}

TEST(Antisymmetrize, AlternatingInputUnchanged) {
  const auto model = build_example_2_2(2, 1);
  const std::array<double, 5> p{0.1, 0.2, -0.3, 0.4, 0.2};
  const Tensor phi = model.fundamental_form_field().evaluate(p);
  const std::array<int, 2> slots{0, 1};
  Tensor diff = antisymmetrize(phi, slots);
  diff -= phi;
  EXPECT_LT(max_abs(diff), 1e-15);
}

TEST(Antisymmetrize, TwoSlotNormalization) {
  const Tensor t(2, {V::lower, V::lower}, {0, 1, 0, 0});
  const std::array<int, 2> slots{0, 1};
  const Tensor a = antisymmetrize(t, slots);
  EXPECT_DOUBLE_EQ(a(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(a(1, 0), -0.5);
}

TEST(Antisymmetrize, RejectsDuplicateOrMixedSlots) {
  const Tensor t(2, {V::lower, V::upper});
  const std::array<int, 2> dup{0, 0};
  const std::array<int, 2> mixed{0, 1};
  EXPECT_THROW((void)antisymmetrize(t, dup), TensorError);
  EXPECT_THROW((void)antisymmetrize(t, mixed), TensorError);
}

TEST(TensorProperty, ContractionCommutesWithDisjointAntisymmetrization) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + rng.index(3);
    const Tensor t = random_tensor(rng, d, {V::upper, V::lower, V::lower, V::lower});
    const std::array<int, 2> before{2, 3};
    const std::array<int, 2> after{0, 1};
    Tensor lhs = antisymmetrize(contract(t, 0, 1), after);
    const Tensor rhs = contract(antisymmetrize(t, before), 0, 1);
    lhs -= rhs;
    EXPECT_LT(max_abs(lhs), 1e-14) << "trial " << trial;
  }
}

TEST(TensorProperty, AntisymmetrizeIsIdempotentAndAlternating) {
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 3 + rng.index(2);
    const Tensor t = random_tensor(rng, d, {V::lower, V::lower, V::lower});
    const std::array<int, 3> slots{0, 1, 2};
    const Tensor a = antisymmetrize(t, slots);
    Tensor again = antisymmetrize(a, slots);
    again -= a;
    EXPECT_LT(max_abs(again), 1e-15);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          EXPECT_NEAR(a(i, j, k), -a(j, i, k), 1e-15);
          EXPECT_NEAR(a(i, j, k), a(j, k, i), 1e-15);
        }
  }
}

TEST(TensorProperty, EvaluateMatchesManualContraction) {
  Rng rng(23);
  const int d = 4;
  const Tensor t = random_tensor(rng, d, {V::upper, V::lower});
  const auto x = testing::random_point(rng, d);
  const auto w = testing::random_point(rng, d);
  double want = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) want += t(a, b) * w[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(b)];
  const std::array<std::span<const double>, 2> args{std::span<const double>(w), std::span<const double>(x)};
  EXPECT_NEAR(evaluate(t, args), want, 1e-14);
}

TEST(PermutationSign, Basics) {
  const std::array<int, 3> id{0, 1, 2};
  const std::array<int, 3> swap{1, 0, 2};
  const std::array<int, 3> cyc{1, 2, 0};
  EXPECT_EQ(permutation_sign(id), 1);
  EXPECT_EQ(permutation_sign(swap), -1);
  EXPECT_EQ(permutation_sign(cyc), 1);
}

TEST(TensorShape, ComponentCountIsDimPowerRank) {
  const Tensor t(3, {V::upper, V::lower, V::lower});
  EXPECT_EQ(t.size(), 27u);
  EXPECT_EQ(t.rank(), 3);
  EXPECT_THROW(Tensor(2, {V::upper}, {1.0, 2.0, 3.0}), TensorError);
}

}  // namespace
}  // namespace gk
