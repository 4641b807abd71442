#include "snn/training.hpp"

#include <cmath>
#include <string>

#include "snn/errors.hpp"

namespace snn {

void TrainConfig::validate() const {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw ConfigError("TrainConfig: epsilon must be in (0, 1]");
  if (max_epochs < 1) throw ConfigError("TrainConfig: max_epochs must be >= 1");
  if (penalty < 0.0) throw ConfigError("TrainConfig: penalty must be >= 0");
}

namespace {

void adam_update_array(Eigen::Map<Eigen::ArrayXd> theta, Eigen::Map<Eigen::ArrayXd> m,
                       Eigen::Map<Eigen::ArrayXd> v, const Eigen::Map<const Eigen::ArrayXd> g,
                       double corr1, double corr2, const AdamConfig& cfg) {
  m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
  v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.square();
  theta -= cfg.lr * (m / corr1) / ((v / corr2).sqrt() + cfg.eps);
}

}  // namespace

void adam_step(AdamState& state, Params& params, const Params& grad, const AdamConfig& cfg) {
  if (state.t == 0) {
    state.m = params.zeros_like();
    state.v = params.zeros_like();
  }
  state.t += 1;
  const double corr1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double corr2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  for (std::size_t k = 0; k < params.weights.size(); ++k) {
    auto map = [](Matrix& mat) {
      return Eigen::Map<Eigen::ArrayXd>(mat.data(), mat.size());
    };
    auto cmap = [](const Matrix& mat) {
      return Eigen::Map<const Eigen::ArrayXd>(mat.data(), mat.size());
    };
    adam_update_array(map(params.weights[k]), map(state.m.weights[k]), map(state.v.weights[k]),
                      cmap(grad.weights[k]), corr1, corr2, cfg);
    auto vmap = [](Vector& vec) { return Eigen::Map<Eigen::ArrayXd>(vec.data(), vec.size()); };
    auto cvmap = [](const Vector& vec) {
      return Eigen::Map<const Eigen::ArrayXd>(vec.data(), vec.size());
    };
    adam_update_array(vmap(params.biases[k]), vmap(state.m.biases[k]), vmap(state.v.biases[k]),
                      cvmap(grad.biases[k]), corr1, corr2, cfg);
  }
}

namespace {

void adam_step_omega(AdamState& state, Vector& omega, const Vector& grad, const AdamConfig& cfg) {
  if (state.m_omega.size() == 0) {
    state.m_omega = Vector::Zero(omega.size());
    state.v_omega = Vector::Zero(omega.size());
  }
  // Shares the timestep already advanced by adam_step.
  const double corr1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double corr2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  adam_update_array(Eigen::Map<Eigen::ArrayXd>(omega.data(), omega.size()),
                    Eigen::Map<Eigen::ArrayXd>(state.m_omega.data(), state.m_omega.size()),
                    Eigen::Map<Eigen::ArrayXd>(state.v_omega.data(), state.v_omega.size()),
                    Eigen::Map<const Eigen::ArrayXd>(grad.data(), grad.size()), corr1, corr2,
                    cfg);
}

PointTermBlock interior_block(const PdeProblem& problem, const Matrix& points,
                              const Vector& weights) {
  if (points.cols() == 0) throw ConfigError("loss: empty interior point set");
  PointTermBlock blk;
  blk.points = points;
  blk.weights = weights;
  blk.c0 = problem.op.eval_c0(points);
  blk.c1 = problem.op.eval_c1(points);
  blk.c2 = problem.op.eval_c2(points);
  blk.target.resize(points.cols());
  for (Eigen::Index i = 0; i < points.cols(); ++i) blk.target[i] = problem.source(points.col(i));
  return blk;
}

void append_condition_terms(LossSpec& spec, const std::vector<ConditionGroup>& groups,
                            const Vector& per_group_scale) {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const ConditionGroup& group = groups[g];
    const double scale = per_group_scale[static_cast<Eigen::Index>(g)];
    Vector w = group.quad_weights.size() != 0
                   ? Vector(scale * group.quad_weights)
                   : Vector(Vector::Constant(group.size(), scale));
    if (group.kind == ConditionKind::dirichlet_trace) {
      PointTermBlock blk;
      blk.points = group.points;
      blk.weights = std::move(w);
      blk.c0 = Vector::Ones(group.size());
      blk.target = group.target;
      spec.point_terms.push_back(std::move(blk));
    } else {
      PairTermBlock blk;
      blk.left = group.points;
      blk.right = group.points_right;
      blk.weights = std::move(w);
      spec.pair_terms.push_back(std::move(blk));
    }
  }
}

}  // namespace

LossSpec build_loss_discrete(const PdeProblem& problem, const CollocationSet& colloc,
                             Coefficients omega, bool include_boundary, double penalty) {
  LossSpec spec;
  spec.omega = std::move(omega);
  const Eigen::Index n = colloc.num_interior();
  if (n == 0) throw ConfigError("loss_discrete: empty interior point set");
  spec.point_terms.push_back(interior_block(problem, colloc.interior,
                                            Vector::Constant(n, 1.0 / static_cast<double>(n))));
  if (include_boundary && penalty != 0.0) {
    const Eigen::Index nbar = colloc.num_condition_rows();
    if (nbar == 0) throw ConfigError("loss_discrete: boundary term requested with no conditions");
    const double scale = penalty / static_cast<double>(nbar);
    append_condition_terms(spec, colloc.conditions,
                           Vector::Constant(static_cast<Eigen::Index>(colloc.conditions.size()),
                                            scale));
  }
  return spec;
}

LossSpec build_loss_integral(const PdeProblem& problem, const QuadratureSet& quad,
                             Coefficients omega, bool include_boundary, double penalty) {
  LossSpec spec;
  spec.omega = std::move(omega);
  if (quad.num_interior() == 0) throw ConfigError("loss_integral: empty interior rule");
  spec.point_terms.push_back(interior_block(problem, quad.interior_points, quad.interior_weights));
  if (include_boundary && penalty != 0.0)
    append_condition_terms(spec, quad.conditions,
                           Vector::Constant(static_cast<Eigen::Index>(quad.conditions.size()),
                                            penalty));
  return spec;
}

double loss_discrete(const Params& params, const Coefficients& omega, const PdeProblem& problem,
                     const CollocationSet& colloc, bool include_boundary, double penalty) {
  return loss_value(params, build_loss_discrete(problem, colloc, omega, include_boundary, penalty));
}

double loss_integral(const Params& params, const Coefficients& omega, const PdeProblem& problem,
                     const QuadratureSet& quad, bool include_boundary, double penalty) {
  return loss_value(params, build_loss_integral(problem, quad, omega, include_boundary, penalty));
}

namespace {

TrainResult train_impl(const Params& initial, LossSpec spec, const TrainConfig& cfg,
                       const AdamConfig& adam) {
  cfg.validate();
  TrainResult result;
  result.params = initial;
  result.omega = spec.omega;
  spec.train_omega = cfg.train_omega;

  LossGrad lg = loss_and_param_grad(result.params, spec);
  if (!std::isfinite(lg.value))
    throw TrainingError("train: non-finite loss at the initial parameters");
  const double initial_loss = lg.value;
  result.report.initial_loss = initial_loss;
  result.report.loss_history.reserve(static_cast<std::size_t>(cfg.max_epochs));

  AdamState state;
  double current = initial_loss;
  int epoch = 0;
  std::string stop_reason = "max_epochs";
  while (epoch < cfg.max_epochs) {
    adam_step(state, result.params, lg.param_grad, adam);
    if (cfg.train_omega) {
      adam_step_omega(state, result.omega, lg.omega_grad, adam);
      spec.omega = result.omega;
    }
    ++epoch;
    lg = loss_and_param_grad(result.params, spec);
    current = lg.value;
    result.report.loss_history.push_back(current);
    if (!std::isfinite(current))
      throw TrainingError("train: non-finite loss at epoch " + std::to_string(epoch));
    if (current <= cfg.epsilon * initial_loss) {
      stop_reason = "converged";
      break;
    }
  }
  result.report.epochs_used = epoch;
  result.report.stop_reason = stop_reason;
  result.report.final_loss = current;
  return result;
}

}  // namespace

TrainResult train(const Params& initial, const PdeProblem& problem, const CollocationSet& colloc,
                  const TrainConfig& cfg, const AdamConfig& adam) {
  const Coefficients omega = Vector::Ones(initial.subspace_dim());
  LossSpec spec =
      build_loss_discrete(problem, colloc, omega, cfg.include_boundary_loss, cfg.penalty);
  return train_impl(initial, std::move(spec), cfg, adam);
}

TrainResult train(const Params& initial, const PdeProblem& problem, const QuadratureSet& quad,
                  const TrainConfig& cfg, const AdamConfig& adam) {
  const Coefficients omega = Vector::Ones(initial.subspace_dim());
  LossSpec spec =
      build_loss_integral(problem, quad, omega, cfg.include_boundary_loss, cfg.penalty);
  return train_impl(initial, std::move(spec), cfg, adam);
}

TrainResult elm_mode(const MlpConfig& cfg, double range) {
  if (!cfg.hidden_widths.empty())
    throw ConfigError("elm_mode: expects a network with no hidden layers");
  TrainResult result;
  result.params = init_elm(cfg, range);
  result.omega = Vector::Ones(cfg.subspace_dim);
  result.report.epochs_used = 0;
  result.report.stop_reason = "none";
  return result;
}

}  // namespace snn
