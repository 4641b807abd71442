#include "snn/solver.hpp"

#include <chrono>
#include <cmath>

#include "snn/errors.hpp"
#include "snn/metrics.hpp"

namespace snn {

std::string method_name(Method m) {
  switch (m) {
    case Method::snn_d: return "snn-d";
    case Method::snn_i: return "snn-i";
    case Method::elm: return "elm";
    case Method::pinn_baseline: return "pinn-baseline";
    case Method::dgm_baseline: return "dgm-baseline";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "snn-d") return Method::snn_d;
  if (name == "snn-i") return Method::snn_i;
  if (name == "elm") return Method::elm;
  if (name == "pinn-baseline") return Method::pinn_baseline;
  if (name == "dgm-baseline") return Method::dgm_baseline;
  throw ConfigError("unknown method '" + name + "'");
}

namespace {

constexpr Eigen::Index kEvalChunk = 4096;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// (A phi_j)(x_i) for all points, evaluated in chunks to bound memory.
Matrix operator_rows(const Params& params, const DifferentialOperator& op, const Matrix& points) {
  const Eigen::Index n = points.cols();
  Matrix rows(n, params.subspace_dim());
  const DiffConfig cfg{op.max_order()};
  for (Eigen::Index at = 0; at < n; at += kEvalChunk) {
    const Eigen::Index len = std::min(kEvalChunk, n - at);
    const BasisEval be = forward_with_input_derivs(params, points.middleCols(at, len), cfg);
    rows.middleRows(at, len) = apply_operator(op, be);
  }
  return rows;
}

Vector eval_scalar_field(const ScalarField& f, const Matrix& points) {
  Vector out(points.cols());
  for (Eigen::Index i = 0; i < points.cols(); ++i) out[i] = f(points.col(i));
  return out;
}

}  // namespace

LinearSystem assemble_snnd(const Params& params, const PdeProblem& problem,
                           const CollocationSet& colloc) {
  const Eigen::Index n = colloc.num_interior();
  const Eigen::Index nbar = colloc.num_condition_rows();
  const int M = params.subspace_dim();

  LinearSystem sys;
  sys.A.resize(n + nbar, M);
  sys.b.resize(n + nbar);
  sys.row_tags.assign(static_cast<std::size_t>(n + nbar), -1);

  sys.A.topRows(n) = operator_rows(params, problem.op, colloc.interior);
  sys.b.head(n) = eval_scalar_field(problem.source, colloc.interior);

  Eigen::Index at = n;
  for (std::size_t g = 0; g < colloc.conditions.size(); ++g) {
    auto [rows, target] = apply_condition(colloc.conditions[g], params);
    sys.A.middleRows(at, rows.rows()) = rows;
    sys.b.segment(at, target.size()) = target;
    for (Eigen::Index i = 0; i < rows.rows(); ++i)
      sys.row_tags[static_cast<std::size_t>(at + i)] = static_cast<int>(g);
    at += rows.rows();
  }

  sys.scaling = row_normalize(sys.A, sys.b);
  return sys;
}

LinearSystem assemble_snni(const Params& params, const PdeProblem& problem,
                           const QuadratureSet& quad) {
  const int M = params.subspace_dim();

  // Interior functional: G = R^T diag(w) R, rhs = R^T (w .* f).
  const Matrix R = operator_rows(params, problem.op, quad.interior_points);
  const Vector f = eval_scalar_field(problem.source, quad.interior_points);
  const Matrix Rw = quad.interior_weights.asDiagonal() * R;
  Matrix G(2 * M, M);
  Vector rhs(2 * M);
  G.topRows(M).noalias() = R.transpose() * Rw;
  rhs.head(M).noalias() = Rw.transpose() * f;

  // Boundary functional: all condition groups summed into one M x M block.
  Matrix H = Matrix::Zero(M, M);
  Vector h = Vector::Zero(M);
  for (const auto& group : quad.conditions) {
    auto [rows, target] = apply_condition(group, params);
    const Vector w = group.quad_weights.size() != 0 ? group.quad_weights
                                                    : Vector(Vector::Ones(rows.rows()));
    const Matrix rows_w = w.asDiagonal() * rows;
    H.noalias() += rows.transpose() * rows_w;
    h.noalias() += rows_w.transpose() * target;
  }
  G.bottomRows(M) = H;
  rhs.tail(M) = h;

  LinearSystem sys;
  sys.A = std::move(G);
  sys.b = std::move(rhs);
  sys.row_tags.assign(static_cast<std::size_t>(2 * M), -1);
  for (int i = 0; i < M; ++i) sys.row_tags[static_cast<std::size_t>(M + i)] = 0;
  sys.scaling = row_normalize(sys.A, sys.b);
  return sys;
}

OmegaSolve solve_omega(const LinearSystem& system) {
  OmegaSolve out;
  out.omega = solve_least_squares(system.A, system.b);
  out.residual_norm = (system.A * out.omega - system.b).norm();
  out.residual_norm_ones =
      (system.A * Vector::Ones(system.A.cols()) - system.b).norm();
  return out;
}

namespace {

void evaluate_errors(const PdeProblem& problem, const Params& params, const Coefficients& omega,
                     bool integral_form, SolveReport& report) {
  if (!problem.exact) return;
  const int d = problem.domain.dim();

  // Fresh uniform grid, independent of the training points.
  const std::vector<int> counts = d == 1 ? std::vector<int>{1001} : std::vector<int>{101, 101};
  const Matrix grid = uniform_grid(problem.domain, counts, true);
  const Vector exact_grid = eval_scalar_field(*problem.exact, grid);
  const Vector approx_grid = eval_solution(params, omega, grid);

  report.has_errors = true;
  report.rel_linf = rel_linf(approx_grid, exact_grid);
  report.eval_points = grid;
  report.u_exact = exact_grid;
  report.u_approx = approx_grid;

  if (!integral_form) {
    report.error_form = "discrete";
    report.rel_l2 = rel_l2_discrete(approx_grid, exact_grid);
    report.n_eval_points = grid.cols();
    return;
  }

  report.error_form = "integral";
  const Box& box = problem.domain;
  if (d == 1) {
    const QuadratureRule1D rule = composite_rule(box.lo[0], box.hi[0], 50, 5);
    const Matrix pts = rule.nodes.transpose();
    report.rel_l2 = rel_l2_integral(eval_solution(params, omega, pts),
                                    eval_scalar_field(*problem.exact, pts), rule.weights);
    report.n_eval_points = rule.size();
  } else {
    const QuadratureRule2D rule = tensor_rule(composite_rule(box.lo[0], box.hi[0], 50, 5),
                                              composite_rule(box.lo[1], box.hi[1], 50, 5));
    report.rel_l2 = rel_l2_integral(eval_solution(params, omega, rule.points),
                                    eval_scalar_field(*problem.exact, rule.points), rule.weights);
    report.n_eval_points = rule.size();
  }
}

}  // namespace

SolveReport snn_solve(const PdeProblem& problem, const SolveOptions& options) {
  const auto t_start = std::chrono::steady_clock::now();
  SolveReport report;
  report.method = method_name(options.method);
  report.problem = problem.name;

  MlpConfig net = options.network;
  net.input_dim = problem.domain.dim();
  net.validate();

  const bool integral_form =
      options.method == Method::snn_i || options.method == Method::dgm_baseline;
  const bool baseline =
      options.method == Method::pinn_baseline || options.method == Method::dgm_baseline;

  TrainConfig tcfg = options.training;
  tcfg.form = integral_form ? LossForm::integral : LossForm::discrete;
  if (baseline) {
    tcfg.include_boundary_loss = true;
    tcfg.train_omega = true;
  }

  const DiscreteSamplingSpec& dspec = options.discrete_sampling.interior_counts.empty()
                                          ? problem.default_discrete
                                          : options.discrete_sampling;
  const IntegralSamplingSpec& ispec = options.integral_sampling.interior_subintervals.empty()
                                          ? problem.default_integral
                                          : options.integral_sampling;

  CollocationSet colloc;
  QuadratureSet quad;
  if (integral_form)
    quad = quadrature_set(problem, ispec);
  else
    colloc = sample_collocation(problem, dspec);

  // Step 1-3: initialize and train the basis.
  const auto t_train = std::chrono::steady_clock::now();
  TrainResult trained;
  if (options.method == Method::elm) {
    trained = elm_mode(net, options.elm_range);
  } else {
    const Params initial = init_xavier(net);
    trained = integral_form ? train(initial, problem, quad, tcfg, options.adam)
                            : train(initial, problem, colloc, tcfg, options.adam);
  }
  report.train_seconds = seconds_since(t_train);
  report.epochs_used = trained.report.epochs_used;
  report.stop_reason = trained.report.stop_reason;
  report.initial_loss = trained.report.initial_loss;
  report.final_loss = trained.report.final_loss;
  report.final_loss_ratio = trained.report.final_ratio();
  report.loss_history = trained.report.loss_history;
  report.trained_omega = tcfg.train_omega;

  // Steps 4-5: assemble the algebraic system and solve for omega.
  if (baseline) {
    report.omega = trained.omega;
    report.used_least_squares = false;
  } else {
    const auto t_asm = std::chrono::steady_clock::now();
    const LinearSystem sys = integral_form ? assemble_snni(trained.params, problem, quad)
                                           : assemble_snnd(trained.params, problem, colloc);
    report.assemble_seconds = seconds_since(t_asm);
    report.system_rows = sys.A.rows();
    report.system_cols = sys.A.cols();

    const auto t_solve = std::chrono::steady_clock::now();
    OmegaSolve solved = solve_omega(sys);
    report.solve_seconds = seconds_since(t_solve);
    report.omega = std::move(solved.omega);
    report.residual_norm = solved.residual_norm;
    report.residual_norm_ones = solved.residual_norm_ones;
    report.used_least_squares = true;
  }

  // Step 6: the approximate solution, measured against the exact one.
  evaluate_errors(problem, trained.params, report.omega, integral_form, report);
  report.trained_params = std::move(trained.params);
  report.total_seconds = seconds_since(t_start);
  return report;
}

}  // namespace snn
