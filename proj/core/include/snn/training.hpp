#pragma once

#include <string>
#include <vector>

#include "snn/autodiff.hpp"
#include "snn/network.hpp"
#include "snn/problems.hpp"
#include "snn/sampling.hpp"

namespace snn {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

enum class LossForm { discrete, integral };

struct TrainConfig {
  LossForm form = LossForm::discrete;
  double epsilon = 1e-3;  // stop when loss / initial loss <= epsilon
  int max_epochs = 5000;
  bool include_boundary_loss = false;
  double penalty = 1.0;  // lambda, used only when include_boundary_loss
  bool train_omega = false;  // baseline (PINN/DGM) mode only

  void validate() const;
};

struct TrainReport {
  int epochs_used = 0;
  std::vector<double> loss_history;  // post-update loss per epoch
  std::string stop_reason;           // "converged" | "max_epochs" | "none"
  double initial_loss = 0.0;
  double final_loss = 0.0;

  double final_ratio() const {
    return initial_loss > 0.0 ? final_loss / initial_loss : 0.0;
  }
};

struct AdamState {
  Params m, v;
  Vector m_omega, v_omega;
  long t = 0;
};

/// One Adam update with bias correction; the timestep increments.
void adam_step(AdamState& state, Params& params, const Params& grad, const AdamConfig& cfg);

/// Discrete loss (1/N) sum_i (A u(x_i) - f(x_i))^2, plus
/// lambda (1/Nbar) sum over all condition rows of (B u - g)^2 when asked.
double loss_discrete(const Params& params, const Coefficients& omega, const PdeProblem& problem,
                     const CollocationSet& colloc, bool include_boundary, double penalty);

/// Integral loss sum_q w_q (A u(x_q) - f(x_q))^2, plus the lambda-weighted
/// boundary quadrature term when asked.
double loss_integral(const Params& params, const Coefficients& omega, const PdeProblem& problem,
                     const QuadratureSet& quad, bool include_boundary, double penalty);

/// The loss as a LossSpec (shared by loss evaluation and training).
LossSpec build_loss_discrete(const PdeProblem& problem, const CollocationSet& colloc,
                             Coefficients omega, bool include_boundary, double penalty);
LossSpec build_loss_integral(const PdeProblem& problem, const QuadratureSet& quad,
                             Coefficients omega, bool include_boundary, double penalty);

struct TrainResult {
  Params params;
  Coefficients omega;  // all ones unless cfg.train_omega
  TrainReport report;
};

/// Adam training against the PDE-residual loss with the relative-loss
/// stopping rule: after each update, stop once loss/initial_loss <= epsilon
/// (initial loss measured at the starting parameters) or at max_epochs.
/// omega stays fixed at all ones unless cfg.train_omega.
TrainResult train(const Params& initial, const PdeProblem& problem, const CollocationSet& colloc,
                  const TrainConfig& cfg, const AdamConfig& adam = {});
TrainResult train(const Params& initial, const PdeProblem& problem, const QuadratureSet& quad,
                  const TrainConfig& cfg, const AdamConfig& adam = {});

/// ELM degenerate mode: random single-layer parameters, zero training epochs.
TrainResult elm_mode(const MlpConfig& cfg, double range);

}  // namespace snn
