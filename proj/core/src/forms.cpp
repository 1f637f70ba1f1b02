#include "gk/forms.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace gk {
namespace {

bool all_lower(const std::vector<Variance>& v) {
  return std::all_of(v.begin(), v.end(), [](Variance x) { return x == Variance::lower; });
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

Tensor exterior_derivative(const TensorJet& omega) {
  const Tensor& w = omega.value;
  if (!all_lower(w.variance())) throw TensorError("exterior_derivative: the form must be fully covariant");
  const int k = w.rank();
  const int d = w.dim();
  if (omega.grad.rank() != k + 1 || omega.grad.dim() != d)
    throw TensorError("exterior_derivative: gradient has the wrong shape");

  Tensor out(d, std::vector<Variance>(static_cast<std::size_t>(k + 1), Variance::lower));
  const auto ud = static_cast<std::size_t>(d);
  std::vector<int> idx(static_cast<std::size_t>(k + 1));
  const double norm = 1.0 / static_cast<double>(k + 1);
  for (std::size_t q = 0; q < out.size(); ++q) {
    std::size_t rem = q;
    for (int m = k + 1; m-- > 0;) {
      idx[static_cast<std::size_t>(m)] = static_cast<int>(rem % ud);
      rem /= ud;
    }
    double sum = 0.0;
    for (int i = 0; i <= k; ++i) {
      // flat index of w_{a0..^ai..ak} followed by the derivative slot ai
      std::size_t flat = 0;
      for (int m = 0; m <= k; ++m)
        if (m != i) flat = flat * ud + static_cast<std::size_t>(idx[static_cast<std::size_t>(m)]);
      const double term = omega.grad.components()[flat * ud + static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      sum += (i % 2 == 0) ? term : -term;
    }
    out.components()[q] = norm * sum;
  }
  return out;
}

Tensor exterior_derivative(const ChartModel& model, std::span<const double> point, const TensorField& omega,
                           int k) {
  if (k != 1 && k != 2) throw TensorError("exterior_derivative: unsupported form degree " + std::to_string(k));
  if (static_cast<int>(omega.variance.size()) != k)
    throw TensorError("exterior_derivative: field rank does not match the requested degree");
  if (omega.dim != model.dim()) throw TensorError("exterior_derivative: field dimension mismatch");
  return exterior_derivative(omega.evaluate_jet(point));
}

Tensor wedge(const Tensor& alpha, const Tensor& beta) {
  if (!all_lower(alpha.variance()) || !all_lower(beta.variance()))
    throw TensorError("wedge: both factors must be covariant");
  if (alpha.rank() + beta.rank() > 3)
    throw TensorError("wedge: forms above degree 3 are only formed through top_form_component");
  Tensor t = outer(alpha, beta);
  std::vector<int> slots(static_cast<std::size_t>(t.rank()));
  std::iota(slots.begin(), slots.end(), 0);
  return antisymmetrize(t, slots);
}

double top_form_component(std::span<const Tensor> factors) {
  if (factors.empty()) throw TensorError("top_form_component: no factors");
  const int d = factors.front().dim();
  int m = 0;
  for (const auto& f : factors) {
    if (f.dim() != d) throw TensorError("top_form_component: dimension mismatch");
    if (!all_lower(f.variance())) throw TensorError("top_form_component: factors must be covariant");
    m += f.rank();
  }
  if (m != d) throw TensorError("top_form_component: total degree must equal the dimension");

  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  double sum = 0.0;
  do {
    double prod = 1.0;
    std::size_t pos = 0;
    for (const auto& f : factors) {
      std::size_t flat = 0;
      for (int r = 0; r < f.rank(); ++r) flat = flat * static_cast<std::size_t>(d) + static_cast<std::size_t>(perm[pos++]);
      prod *= f.components()[flat];
      if (prod == 0.0) break;
    }
    if (prod != 0.0) sum += permutation_sign(perm) * prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / factorial(m);
}

}  // namespace gk
