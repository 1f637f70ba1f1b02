#include "gk/models.hpp"

#include <Eigen/Cholesky>
#include <string>

namespace gk {
namespace {

void require_dims(int n, int s, const char* who) {
  if (n < 1 || s < 1)
    throw ModelError(std::string(who) + ": need n >= 1 and s >= 1 (got n=" + std::to_string(n) +
                     ", s=" + std::to_string(s) + ")");
}

ChartModel empty_model(std::string name, int n, int s) {
  ChartModel m;
  m.name = std::move(name);
  m.n = n;
  m.s = s;
  const auto d = static_cast<std::size_t>(m.dim());
  m.g.assign(d * d, Field(0.0));
  m.phi.assign(d * d, Field(0.0));
  m.xi.assign(static_cast<std::size_t>(s), std::vector<Field>(d, Field(0.0)));
  m.eta.assign(static_cast<std::size_t>(s), std::vector<Field>(d, Field(0.0)));
  return m;
}

Field& at(std::vector<Field>& m, int dim, int a, int b) {
  return m[static_cast<std::size_t>(a) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(b)];
}

// (x, y, z) layout shared by example22 and the control.
ChartModel xyz_structure(std::string name, int n, int s, const Field& fiber_factor) {
  ChartModel m = empty_model(std::move(name), n, s);
  const int d = m.dim();
  for (int i = 0; i < n; ++i) {
    at(m.g, d, i, i) = fiber_factor;
    at(m.g, d, n + i, n + i) = fiber_factor;
    at(m.phi, d, n + i, i) = 1.0;   // phi d/dx_i = d/dy_i
    at(m.phi, d, i, n + i) = -1.0;  // phi d/dy_i = -d/dx_i
  }
  for (int a = 0; a < s; ++a) {
    const int z = 2 * n + a;
    at(m.g, d, z, z) = 1.0;
    m.xi[static_cast<std::size_t>(a)][static_cast<std::size_t>(z)] = 1.0;
    m.eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(z)] = 1.0;
  }
  return m;
}

Field z_sum(int first, int count) {
  std::vector<int> idx;
  for (int a = 0; a < count; ++a) idx.push_back(first + a);
  return coordinate_sum(idx);
}

struct Example23Fields {
  Field f1;
  Field f2;
};

Example23Fields example_2_3_fields(double c1, double c2) {
  if (c1 == 0.0 && c2 == 0.0) throw ModelError("example23: c1 and c2 must not both vanish");
  const Field w = z_sum(4, 3);
  const Field decay = exp(-w);
  return {decay * (c2 * cos(w) - c1 * sin(w)), decay * (c1 * cos(w) + c2 * sin(w))};
}

}  // namespace

ChartModel build_example_2_2(int n, int s) {
  require_dims(n, s, "example22");
  ChartModel m = xyz_structure("example22", n, s, exp(2.0 * z_sum(2 * n, s)));
  m.warped_product = true;
  m.validate();
  return m;
}

ChartModel build_control(int n, int s) {
  require_dims(n, s, "control");
  ChartModel m = xyz_structure("control", n, s, Field(1.0));
  m.validate();
  return m;
}

ChartModel build_example_2_3(double c1, double c2) {
  const auto [f1, f2] = example_2_3_fields(c1, c2);
  ChartModel m = empty_model("example23", 2, 3);
  const int d = m.dim();
  const Field r2 = f1 * f1 + f2 * f2;
  const Field conformal = 1.0 / r2;
  // For each block (x, y) the frame is e = f1 d/dx + f2 d/dy, e' = -f2 d/dx + f1 d/dy
  // with coframe theta = (f1 dx + f2 dy)/r2, theta' = (-f2 dx + f1 dy)/r2,
  // and phi = e' (x) theta - e (x) theta'.
  for (int blk = 0; blk < 2; ++blk) {
    const int x = 2 * blk;
    const int y = x + 1;
    at(m.g, d, x, x) = conformal;
    at(m.g, d, y, y) = conformal;
    at(m.phi, d, x, x) = (-f2 * f1 - f1 * -f2) / r2;
    at(m.phi, d, x, y) = (-f2 * f2 - f1 * f1) / r2;
    at(m.phi, d, y, x) = (f1 * f1 + f2 * f2) / r2;
    at(m.phi, d, y, y) = (f1 * f2 - f2 * f1) / r2;
  }
  for (int a = 0; a < 3; ++a) {
    const int z = 4 + a;
    at(m.g, d, z, z) = 1.0;
    m.xi[static_cast<std::size_t>(a)][static_cast<std::size_t>(z)] = 1.0;
    // eta^a = g(., e_{5+a}) = dz_a
    m.eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(z)] = 1.0;
  }
  // locally (dx^2 + dy^2) e^{2w}/(c1^2 + c2^2) + dz^2
  m.warped_product = true;
  m.validate();
  return m;
}

std::vector<TensorField> example_2_3_frame(double c1, double c2) {
  const auto [f1, f2] = example_2_3_fields(c1, c2);
  constexpr int d = 7;
  std::vector<TensorField> frame;
  for (int blk = 0; blk < 2; ++blk) {
    std::vector<Field> e(d, Field(0.0));
    std::vector<Field> e2(d, Field(0.0));
    e[static_cast<std::size_t>(2 * blk)] = f1;
    e[static_cast<std::size_t>(2 * blk + 1)] = f2;
    e2[static_cast<std::size_t>(2 * blk)] = -f2;
    e2[static_cast<std::size_t>(2 * blk + 1)] = f1;
    frame.push_back(TensorField::vector(e));
    frame.push_back(TensorField::vector(e2));
  }
  for (int a = 0; a < 3; ++a) {
    std::vector<Field> e(d, Field(0.0));
    e[static_cast<std::size_t>(4 + a)] = 1.0;
    frame.push_back(TensorField::vector(e));
  }
  return frame;
}

WarpedProductSpec validated(WarpedProductSpec spec) {
  require_dims(spec.n, spec.s, "warped product");
  if (!(spec.k > 0.0)) throw ModelError("warped product: k must be positive");
  const int m = 2 * spec.n;
  if (spec.G.size() == 0) spec.G = Mat::Identity(m, m);
  if (spec.J.size() == 0) {
    spec.J = Mat::Zero(m, m);
    for (int i = 0; i < spec.n; ++i) {
      spec.J(spec.n + i, i) = 1.0;
      spec.J(i, spec.n + i) = -1.0;
    }
  }
  if (spec.G.rows() != m || spec.G.cols() != m || spec.J.rows() != m || spec.J.cols() != m)
    throw ModelError("warped product: G and J must be 2n x 2n");
  constexpr double tol = 1e-12;
  if ((spec.J * spec.J + Mat::Identity(m, m)).cwiseAbs().maxCoeff() > tol)
    throw ModelError("warped product: J^2 must equal -I");
  if ((spec.G - spec.G.transpose()).cwiseAbs().maxCoeff() > tol)
    throw ModelError("warped product: G must be symmetric");
  if (Eigen::LLT<Mat>(spec.G).info() != Eigen::Success)
    throw ModelError("warped product: G must be positive definite");
  if ((spec.J.transpose() * spec.G * spec.J - spec.G).cwiseAbs().maxCoeff() > tol * spec.G.cwiseAbs().maxCoeff() * 10)
    throw ModelError("warped product: G must be J-invariant");
  return spec;
}

Field warping_function(const WarpedProductSpec& spec) { return spec.k * exp(z_sum(0, spec.s)); }

ChartModel build_warped(const WarpedProductSpec& raw) {
  const WarpedProductSpec spec = validated(raw);
  ChartModel m = empty_model("warped", spec.n, spec.s);
  const int d = m.dim();
  const int s = spec.s;
  const Field f = warping_function(spec);
  const Field f2 = f * f;
  for (int i = 0; i < s; ++i) {
    at(m.g, d, i, i) = 1.0;
    m.xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    m.eta[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  }
  for (int a = 0; a < 2 * spec.n; ++a)
    for (int b = 0; b < 2 * spec.n; ++b) {
      if (spec.G(a, b) != 0.0) at(m.g, d, s + a, s + b) = spec.G(a, b) * f2;
      if (spec.J(a, b) != 0.0) at(m.phi, d, s + a, s + b) = spec.J(a, b);
    }
  m.warped_product = true;
  m.validate();
  return m;
}

std::vector<double> example_2_2_to_warped(int n, int s, std::span<const double> point) {
  require_dims(n, s, "example_2_2_to_warped");
  if (static_cast<int>(point.size()) != 2 * n + s) throw std::invalid_argument("example_2_2_to_warped: bad point size");
  std::vector<double> out(point.size());
  for (int a = 0; a < s; ++a) out[static_cast<std::size_t>(a)] = point[static_cast<std::size_t>(2 * n + a)];
  for (int i = 0; i < 2 * n; ++i) out[static_cast<std::size_t>(s + i)] = point[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace gk
