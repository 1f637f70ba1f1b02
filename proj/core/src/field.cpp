#include "gk/field.hpp"

#include <cmath>
#include <sstream>

namespace gk {

struct Field::Node {
  Op op = Op::constant;
  double constant = 0.0;  // constant value, or the exponent for pow
  int coordinate = -1;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  int max_coordinate = -1;
};

namespace {

using NodePtr = std::shared_ptr<const Field::Node>;

NodePtr make_node(Field::Op op, NodePtr lhs, NodePtr rhs = nullptr, double constant = 0.0) {
  auto n = std::make_shared<Field::Node>();
  n->op = op;
  n->constant = constant;
  n->max_coordinate = std::max(lhs ? lhs->max_coordinate : -1, rhs ? rhs->max_coordinate : -1);
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

const char* op_name(Field::Op op) {
  switch (op) {
    case Field::Op::constant: return "const";
    case Field::Op::coordinate: return "coord";
    case Field::Op::add: return "add";
    case Field::Op::sub: return "sub";
    case Field::Op::mul: return "mul";
    case Field::Op::div: return "div";
    case Field::Op::neg: return "neg";
    case Field::Op::exp: return "exp";
    case Field::Op::sin: return "sin";
    case Field::Op::cos: return "cos";
    case Field::Op::pow: return "pow";
  }
  return "?";
}

bool is_unary(Field::Op op) {
  return op == Field::Op::neg || op == Field::Op::exp || op == Field::Op::sin || op == Field::Op::cos ||
         op == Field::Op::pow;
}

void check_pow_domain(double base, double exponent) {
  const bool integral = std::floor(exponent) == exponent;
  if (base < 0.0 && !integral) throw EvaluationError("negative base with non-integer exponent", "pow");
  if (base == 0.0 && exponent < 3.0 && !integral)
    throw EvaluationError("derivatives of a fractional power are singular at zero", "pow");
  if (base == 0.0 && exponent < 0.0) throw EvaluationError("zero raised to a negative power", "pow");
}

template <typename Fn>
auto guarded(const char* edge, Field::Op op, Fn&& fn) {
  try {
    return fn();
  } catch (const EvaluationError& e) {
    throw e.nested(std::string(op_name(op)) + "." + edge);
  }
}

double eval_value(const Field::Node& n, std::span<const double> x) {
  switch (n.op) {
    case Field::Op::constant: return n.constant;
    case Field::Op::coordinate: return x[static_cast<std::size_t>(n.coordinate)];
    default: break;
  }
  const double a = guarded(is_unary(n.op) ? "arg" : "lhs", n.op, [&] { return eval_value(*n.lhs, x); });
  switch (n.op) {
    case Field::Op::neg: return -a;
    case Field::Op::exp: return std::exp(a);
    case Field::Op::sin: return std::sin(a);
    case Field::Op::cos: return std::cos(a);
    case Field::Op::pow:
      if (a < 0.0 && std::floor(n.constant) != n.constant)
        throw EvaluationError("negative base with non-integer exponent", "pow");
      if (a == 0.0 && n.constant < 0.0) throw EvaluationError("zero raised to a negative power", "pow");
      return std::pow(a, n.constant);
    default: break;
  }
  const double b = guarded("rhs", n.op, [&] { return eval_value(*n.rhs, x); });
  switch (n.op) {
    case Field::Op::add: return a + b;
    case Field::Op::sub: return a - b;
    case Field::Op::mul: return a * b;
    case Field::Op::div:
      if (b == 0.0) throw EvaluationError("division by zero", "div");
      return a / b;
    default: break;
  }
  throw std::logic_error("Field: unhandled node");
}

Jet3 eval_jet(const Field::Node& n, std::span<const double> x, int order) {
  const int d = static_cast<int>(x.size());
  switch (n.op) {
    case Field::Op::constant: return Jet3::constant(d, order, n.constant);
    case Field::Op::coordinate:
      return Jet3::variable(d, order, n.coordinate, x[static_cast<std::size_t>(n.coordinate)]);
    default: break;
  }
  // constant subtrees are cheap as plain values
  if (n.max_coordinate < 0) return Jet3::constant(d, order, eval_value(n, x));

  const Jet3 a = guarded(is_unary(n.op) ? "arg" : "lhs", n.op, [&] { return eval_jet(*n.lhs, x, order); });
  switch (n.op) {
    case Field::Op::neg: return -a;
    case Field::Op::exp: return exp(a);
    case Field::Op::sin: return sin(a);
    case Field::Op::cos: return cos(a);
    case Field::Op::pow: check_pow_domain(a.value(), n.constant); return pow(a, n.constant);
    default: break;
  }
  const Jet3 b = guarded("rhs", n.op, [&] { return eval_jet(*n.rhs, x, order); });
  switch (n.op) {
    case Field::Op::add: return a + b;
    case Field::Op::sub: return a - b;
    case Field::Op::mul: return a * b;
    case Field::Op::div:
      if (b.value() == 0.0) throw EvaluationError("division by zero", "div");
      return a / b;
    default: break;
  }
  throw std::logic_error("Field: unhandled node");
}

void print(const Field::Node& n, std::ostringstream& os) {
  switch (n.op) {
    case Field::Op::constant: os << n.constant; return;
    case Field::Op::coordinate: os << "x" << n.coordinate; return;
    case Field::Op::neg: os << "-("; print(*n.lhs, os); os << ")"; return;
    case Field::Op::exp:
    case Field::Op::sin:
    case Field::Op::cos:
      os << op_name(n.op) << "(";
      print(*n.lhs, os);
      os << ")";
      return;
    case Field::Op::pow: os << "("; print(*n.lhs, os); os << ")^" << n.constant; return;
    default: break;
  }
  const char* sym = n.op == Field::Op::add ? " + " : n.op == Field::Op::sub ? " - " : n.op == Field::Op::mul ? "*" : "/";
  os << "(";
  print(*n.lhs, os);
  os << sym;
  print(*n.rhs, os);
  os << ")";
}

}  // namespace

EvaluationError::EvaluationError(const std::string& what, std::string path)
    : std::runtime_error(what + " at node '" + path + "'"), reason_(what), path_(std::move(path)) {}

EvaluationError EvaluationError::nested(const std::string& edge) const {
  return EvaluationError(reason_, edge + "/" + path_);
}

Field::Field(double constant) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->constant = constant;
  node_ = std::move(n);
}

Field Field::coordinate(int index) {
  if (index < 0) throw std::invalid_argument("Field::coordinate: negative index");
  auto n = std::make_shared<Node>();
  n->op = Op::coordinate;
  n->coordinate = index;
  n->max_coordinate = index;
  return Field(std::shared_ptr<const Node>(std::move(n)));
}

Field::Op Field::op() const noexcept { return node_->op; }

std::optional<double> Field::constant_value() const noexcept {
  if (node_->op == Op::constant) return node_->constant;
  return std::nullopt;
}

bool Field::is_zero() const noexcept { return node_->op == Op::constant && node_->constant == 0.0; }

int Field::max_coordinate() const noexcept { return node_->max_coordinate; }

double Field::value(std::span<const double> point) const {
  if (max_coordinate() >= static_cast<int>(point.size()))
    throw std::invalid_argument("Field references coordinate " + std::to_string(max_coordinate()) +
                                " but the point has dimension " + std::to_string(point.size()));
  return eval_value(*node_, point);
}

Jet3 Field::jet(std::span<const double> point, int order) const {
  if (point.empty()) throw std::invalid_argument("Field::jet: empty point");
  if (max_coordinate() >= static_cast<int>(point.size()))
    throw std::invalid_argument("Field references coordinate " + std::to_string(max_coordinate()) +
                                " but the point has dimension " + std::to_string(point.size()));
  return eval_jet(*node_, point, order);
}

std::string Field::to_string() const {
  std::ostringstream os;
  os.precision(17);
  print(*node_, os);
  return os.str();
}

Field operator+(const Field& a, const Field& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.constant_value() && b.constant_value()) return Field(*a.constant_value() + *b.constant_value());
  return Field(make_node(Field::Op::add, a.node_, b.node_));
}

Field operator-(const Field& a, const Field& b) {
  if (b.is_zero()) return a;
  if (a.constant_value() && b.constant_value()) return Field(*a.constant_value() - *b.constant_value());
  if (a.is_zero()) return -b;
  return Field(make_node(Field::Op::sub, a.node_, b.node_));
}

Field operator*(const Field& a, const Field& b) {
  if (a.is_zero() || b.is_zero()) return Field(0.0);
  if (a.constant_value() == 1.0) return b;
  if (b.constant_value() == 1.0) return a;
  if (a.constant_value() && b.constant_value()) return Field(*a.constant_value() * *b.constant_value());
  return Field(make_node(Field::Op::mul, a.node_, b.node_));
}

Field operator/(const Field& a, const Field& b) {
  if (b.constant_value() == 1.0) return a;
  if (a.is_zero() && !b.is_zero()) return Field(0.0);
  return Field(make_node(Field::Op::div, a.node_, b.node_));
}

Field operator-(const Field& a) {
  if (auto c = a.constant_value()) return Field(-*c);
  return Field(make_node(Field::Op::neg, a.node_));
}

Field exp(const Field& a) { return Field(make_node(Field::Op::exp, a.node_)); }
Field sin(const Field& a) { return Field(make_node(Field::Op::sin, a.node_)); }
Field cos(const Field& a) { return Field(make_node(Field::Op::cos, a.node_)); }

Field pow(const Field& a, double exponent) {
  if (exponent == 1.0) return a;
  if (exponent == 0.0) return Field(1.0);
  return Field(make_node(Field::Op::pow, a.node_, nullptr, exponent));
}

Jet3 jet_eval(const Field& field, std::span<const double> point, int order) {
  if (order < 1 || order > Jet3::max_order) throw std::invalid_argument("jet_eval: order must be in 1..3");
  return field.jet(point, order);
}

Field coordinate_sum(std::span<const int> indices) {
  Field sum(0.0);
  for (int i : indices) sum = sum + Field::coordinate(i);
  return sum;
}

TensorField::TensorField(int dim_, std::vector<Variance> variance_) : dim(dim_), variance(std::move(variance_)) {
  std::size_t n = 1;
  for (std::size_t k = 0; k < variance.size(); ++k) n *= static_cast<std::size_t>(dim);
  components.assign(n, Field(0.0));
}

Tensor TensorField::evaluate(std::span<const double> point) const {
  Tensor t(dim, variance);
  for (std::size_t q = 0; q < components.size(); ++q) t.components()[q] = components[q].value(point);
  return t;
}

TensorJet TensorField::evaluate_jet(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dim) throw std::invalid_argument("TensorField: point dimension mismatch");
  Tensor value(dim, variance);
  std::vector<Variance> gv = variance;
  gv.push_back(Variance::lower);
  Tensor grad(dim, gv);
  const auto d = static_cast<std::size_t>(dim);
  for (std::size_t q = 0; q < components.size(); ++q) {
    if (auto c = components[q].constant_value()) {
      value.components()[q] = *c;
      continue;
    }
    const Jet3 j = components[q].jet(point, 1);
    value.components()[q] = j.value();
    for (std::size_t e = 0; e < d; ++e) grad.components()[q * d + e] = j.d1(static_cast<int>(e));
  }
  return {std::move(value), std::move(grad)};
}

TensorField TensorField::vector(std::vector<Field> components) {
  TensorField f(static_cast<int>(components.size()), {Variance::upper});
  f.components = std::move(components);
  return f;
}

TensorField TensorField::covector(std::vector<Field> components) {
  TensorField f(static_cast<int>(components.size()), {Variance::lower});
  f.components = std::move(components);
  return f;
}

}  // namespace gk
