#pragma once

#include <string>
#include <vector>

#include "snn/linalg.hpp"
#include "snn/network.hpp"
#include "snn/problems.hpp"
#include "snn/sampling.hpp"
#include "snn/training.hpp"

namespace snn {

enum class Method { snn_d, snn_i, elm, pinn_baseline, dgm_baseline };

std::string method_name(Method m);
Method method_from_name(const std::string& name);  // ConfigError on unknown

/// Assembled linear system for the coefficient solve. Row tags: -1 for
/// interior (PDE) rows, otherwise the condition-group index. `scaling` holds
/// the per-row divisors applied by row normalization.
struct LinearSystem {
  Matrix A;
  Vector b;
  std::vector<int> row_tags;
  Vector scaling;
};

/// Collocation system: N rows of (A phi_j)(x_i) = f(x_i) followed by one row
/// block per condition group, then row-normalized.
LinearSystem assemble_snnd(const Params& params, const PdeProblem& problem,
                           const CollocationSet& colloc);

/// Quadrature Gram system (2M x M): rows 1..M from the interior functional,
/// rows M+1..2M from the boundary functional with all condition groups
/// summed, then row-normalized.
LinearSystem assemble_snni(const Params& params, const PdeProblem& problem,
                           const QuadratureSet& quad);

struct OmegaSolve {
  Coefficients omega;
  double residual_norm = 0.0;       // ||A omega - b|| in normalized units
  double residual_norm_ones = 0.0;  // residual of the all-ones omega
};

/// Minimum-norm least-squares solution of the normalized system.
OmegaSolve solve_omega(const LinearSystem& system);

struct SolveOptions {
  Method method = Method::snn_d;
  MlpConfig network;
  TrainConfig training;
  AdamConfig adam;
  double elm_range = 1.0;
  // Sampling; when empty the problem's preset counts are used.
  DiscreteSamplingSpec discrete_sampling;
  IntegralSamplingSpec integral_sampling;
};

struct SolveReport {
  std::string method;
  std::string problem;

  Coefficients omega;
  int epochs_used = 0;
  std::string stop_reason;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  double final_loss_ratio = 0.0;
  std::vector<double> loss_history;

  long system_rows = 0;
  long system_cols = 0;
  double residual_norm = 0.0;
  double residual_norm_ones = 0.0;
  bool used_least_squares = false;
  bool trained_omega = false;

  // Error norms against the exact solution, when known.
  bool has_errors = false;
  double rel_l2 = 0.0;
  double rel_linf = 0.0;
  std::string error_form;  // "discrete" | "integral"
  long n_eval_points = 0;

  // Pointwise field on the evaluation grid, for CSV export.
  Matrix eval_points;  // d x n
  Vector u_exact;
  Vector u_approx;

  // The trained network, for checkpointing.
  Params trained_params;

  double train_seconds = 0.0;
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;
  double total_seconds = 0.0;
};

/// End-to-end run: initialize, train the basis, assemble the method's
/// system, solve for omega, and evaluate errors on a fresh grid
/// (1001 points in 1D, 101 x 101 in 2D; integral errors use a composite
/// rule with 50 subintervals of 5 points per dimension).
SolveReport snn_solve(const PdeProblem& problem, const SolveOptions& options);

}  // namespace snn
