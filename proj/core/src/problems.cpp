#include "snn/problems.hpp"

#include <cmath>

#include "snn/errors.hpp"

namespace snn {

double Box::measure() const {
  double m = 1.0;
  for (int d = 0; d < dim(); ++d) m *= edge_length(d);
  return m;
}

DifferentialOperator DifferentialOperator::constant(std::vector<double> c2, std::vector<double> c1,
                                                    double c0) {
  DifferentialOperator op;
  if (c0 != 0.0) op.c0 = [c0](const Vector&) { return c0; };
  auto lift = [](std::vector<double> cs) {
    std::vector<ScalarField> fields;
    bool any = false;
    for (double c : cs) any = any || c != 0.0;
    if (!any) return fields;
    fields.reserve(cs.size());
    for (double c : cs) fields.push_back([c](const Vector&) { return c; });
    return fields;
  };
  op.c1 = lift(std::move(c1));
  op.c2 = lift(std::move(c2));
  return op;
}

namespace {

Vector eval_field(const ScalarField& f, const Matrix& points) {
  Vector out(points.cols());
  for (Eigen::Index i = 0; i < points.cols(); ++i) out[i] = f(points.col(i));
  return out;
}

}  // namespace

Vector DifferentialOperator::eval_c0(const Matrix& points) const {
  if (!c0) return Vector();
  return eval_field(c0, points);
}

std::vector<Vector> DifferentialOperator::eval_c1(const Matrix& points) const {
  std::vector<Vector> out;
  for (const auto& f : c1) out.push_back(eval_field(f, points));
  return out;
}

std::vector<Vector> DifferentialOperator::eval_c2(const Matrix& points) const {
  std::vector<Vector> out;
  for (const auto& f : c2) out.push_back(eval_field(f, points));
  return out;
}

Matrix apply_operator(const DifferentialOperator& op, const BasisEval& be) {
  const int d = static_cast<int>(be.points.rows());
  if (op.max_order() >= 1 && static_cast<int>(be.dphi.size()) < d)
    throw ConfigError("apply_operator: operator needs first derivatives the evaluation lacks");
  if (op.max_order() >= 2 && static_cast<int>(be.d2phi.size()) < d)
    throw ConfigError("apply_operator: operator needs second derivatives the evaluation lacks");

  Matrix out = Matrix::Zero(be.num_points(), be.num_basis());
  if (op.c0) {
    const Vector c = op.eval_c0(be.points);
    out += c.asDiagonal() * be.phi;
  }
  for (std::size_t p = 0; p < op.c1.size(); ++p) {
    const Vector c = eval_field(op.c1[p], be.points);
    out += c.asDiagonal() * be.dphi[p];
  }
  for (std::size_t p = 0; p < op.c2.size(); ++p) {
    const Vector c = eval_field(op.c2[p], be.points);
    out += c.asDiagonal() * be.d2phi[p];
  }
  return out;
}

std::pair<Matrix, Vector> apply_condition(const ConditionGroup& group, const Params& params) {
  if (group.kind == ConditionKind::dirichlet_trace) {
    const BasisEval be = forward_with_input_derivs(params, group.points, DiffConfig{0});
    return {be.phi, group.target};
  }
  const BasisEval left = forward_with_input_derivs(params, group.points, DiffConfig{0});
  const BasisEval right = forward_with_input_derivs(params, group.points_right, DiffConfig{0});
  return {left.phi - right.phi, Vector::Zero(group.points.cols())};
}

namespace {

constexpr double kPi = 3.14159265358979323846;

ScalarField zero_field() {
  return [](const Vector&) { return 0.0; };
}

}  // namespace

PdeProblem helmholtz1d() {
  // u'' - 10 u = f on (0, 2), Dirichlet ends.
  // Exact: u(x) = sin(3 pi x + 3 pi/20) cos(2 pi x + pi/10) + 2.
  PdeProblem prob;
  prob.name = "helmholtz1d";
  prob.domain = Box{Vector::Constant(1, 0.0), Vector::Constant(1, 2.0)};
  prob.op = DifferentialOperator::constant({1.0}, {}, -10.0);

  auto u = [](const Vector& x) {
    return std::sin(3.0 * kPi * x[0] + 3.0 * kPi / 20.0) *
               std::cos(2.0 * kPi * x[0] + kPi / 10.0) +
           2.0;
  };
  auto du = [](const Vector& x) {
    const double a = 3.0 * kPi * x[0] + 3.0 * kPi / 20.0;
    const double b = 2.0 * kPi * x[0] + kPi / 10.0;
    return 3.0 * kPi * std::cos(a) * std::cos(b) - 2.0 * kPi * std::sin(a) * std::sin(b);
  };
  auto d2u = [](const Vector& x) {
    const double a = 3.0 * kPi * x[0] + 3.0 * kPi / 20.0;
    const double b = 2.0 * kPi * x[0] + kPi / 10.0;
    return -13.0 * kPi * kPi * std::sin(a) * std::cos(b) -
           12.0 * kPi * kPi * std::cos(a) * std::sin(b);
  };
  prob.exact = u;
  prob.exact_grad = {du};
  prob.exact_hess_diag = {d2u};
  prob.source = [u, d2u](const Vector& x) { return d2u(x) - 10.0 * u(x); };
  prob.conditions = {{ConditionKind::dirichlet_trace,
                      {{0, 0}, {0, 1}},
                      [u](const Vector& x) { return u(x); },
                      "dirichlet"}};
  prob.default_discrete = {{1000}, {1}};
  prob.default_integral = {{30}, 10, {{1, 1}}};
  return prob;
}

PdeProblem poisson2d() {
  // -Laplace u = f on the unit square, Dirichlet boundary.
  // Exact: u = sin(pi x) sin(pi y).
  PdeProblem prob;
  prob.name = "poisson2d";
  prob.domain = Box{Vector::Zero(2), Vector::Ones(2)};
  prob.op = DifferentialOperator::constant({-1.0, -1.0}, {}, 0.0);

  auto u = [](const Vector& x) { return std::sin(kPi * x[0]) * std::sin(kPi * x[1]); };
  prob.exact = u;
  prob.exact_grad = {
      [](const Vector& x) { return kPi * std::cos(kPi * x[0]) * std::sin(kPi * x[1]); },
      [](const Vector& x) { return kPi * std::sin(kPi * x[0]) * std::cos(kPi * x[1]); }};
  prob.exact_hess_diag = {
      [u](const Vector& x) { return -kPi * kPi * u(x); },
      [u](const Vector& x) { return -kPi * kPi * u(x); }};
  prob.source = [u](const Vector& x) { return 2.0 * kPi * kPi * u(x); };
  prob.conditions = {{ConditionKind::dirichlet_trace,
                      {{0, 0}, {0, 1}, {1, 0}, {1, 1}},
                      [u](const Vector& x) { return u(x); },
                      "dirichlet"}};
  prob.default_discrete = {{32, 32}, {32}};
  prob.default_integral = {{8, 8}, 4, {{8, 4}}};
  return prob;
}

PdeProblem advection() {
  // u_t - c u_x = 0 with c = -2 on (-1,1) x (0,1); coordinates (x, t).
  // Periodic in x, initial data at t = 0. Exact: u = sin(pi (x - 2 t)).
  PdeProblem prob;
  prob.name = "advection";
  const double c = -2.0;
  prob.domain = Box{(Vector(2) << -1.0, 0.0).finished(), (Vector(2) << 1.0, 1.0).finished()};
  prob.op = DifferentialOperator::constant({}, {-c, 1.0}, 0.0);

  auto u = [](const Vector& x) { return std::sin(kPi * (x[0] - 2.0 * x[1])); };
  prob.exact = u;
  prob.exact_grad = {
      [](const Vector& x) { return kPi * std::cos(kPi * (x[0] - 2.0 * x[1])); },
      [](const Vector& x) { return -2.0 * kPi * std::cos(kPi * (x[0] - 2.0 * x[1])); }};
  prob.exact_hess_diag = {
      [u](const Vector& x) { return -kPi * kPi * u(x); },
      [u](const Vector& x) { return -4.0 * kPi * kPi * u(x); }};
  prob.source = zero_field();
  prob.conditions = {
      {ConditionKind::periodic_pair, {{0, 0}}, nullptr, "periodic-x"},
      {ConditionKind::dirichlet_trace,
       {{1, 0}},
       [](const Vector& x) { return std::sin(kPi * x[0]); },
       "initial"}};
  prob.default_discrete = {{100, 100}, {100, 500}};
  prob.default_integral = {{10, 10}, 10, {{10, 10}, {50, 10}}};
  return prob;
}

PdeProblem parabolic1d() {
  // u_t - u_xx = f on (0,1) x (0,1); coordinates (x, t).
  // Exact: u = 2 e^{-t} sin(pi x).
  PdeProblem prob;
  prob.name = "parabolic1d";
  prob.domain = Box{Vector::Zero(2), Vector::Ones(2)};
  prob.op = DifferentialOperator::constant({-1.0, 0.0}, {0.0, 1.0}, 0.0);

  auto u = [](const Vector& x) { return 2.0 * std::exp(-x[1]) * std::sin(kPi * x[0]); };
  prob.exact = u;
  prob.exact_grad = {
      [](const Vector& x) { return 2.0 * kPi * std::exp(-x[1]) * std::cos(kPi * x[0]); },
      [u](const Vector& x) { return -u(x); }};
  prob.exact_hess_diag = {
      [u](const Vector& x) { return -kPi * kPi * u(x); },
      [u](const Vector& x) { return u(x); }};
  prob.source = [u](const Vector& x) { return (kPi * kPi - 1.0) * u(x); };
  prob.conditions = {
      {ConditionKind::dirichlet_trace, {{0, 0}}, [u](const Vector& x) { return u(x); }, "left"},
      {ConditionKind::dirichlet_trace, {{0, 1}}, [u](const Vector& x) { return u(x); }, "right"},
      {ConditionKind::dirichlet_trace,
       {{1, 0}},
       [](const Vector& x) { return 2.0 * std::sin(kPi * x[0]); },
       "initial"}};
  prob.default_discrete = {{50, 50}, {50, 50, 50}};
  prob.default_integral = {{10, 10}, 5, {{10, 5}, {10, 5}, {10, 5}}};
  return prob;
}

PdeProblem anisotropic2d(double k1, double k2) {
  // -div(diag(k1,k2) grad u) = f on the unit square, Dirichlet boundary.
  if (!(k1 > 0.0) || !(k2 > 0.0))
    throw ConfigError("anisotropic2d: diffusion coefficients must be positive");
  PdeProblem prob = poisson2d();
  prob.name = "anisotropic2d";
  prob.op = DifferentialOperator::constant({-k1, -k2}, {}, 0.0);
  auto u = [](const Vector& x) { return std::sin(kPi * x[0]) * std::sin(kPi * x[1]); };
  prob.source = [u, k1, k2](const Vector& x) { return (k1 + k2) * kPi * kPi * u(x); };
  return prob;
}

PdeProblem builtin(const std::string& name, double k1, double k2) {
  if (name == "helmholtz1d") return helmholtz1d();
  if (name == "poisson2d") return poisson2d();
  if (name == "advection") return advection();
  if (name == "parabolic1d") return parabolic1d();
  if (name == "anisotropic2d") return anisotropic2d(k1, k2);
  throw ConfigError("builtin: unknown problem name '" + name + "'");
}

}  // namespace snn
