#pragma once

#include <vector>

#include "snn/linalg.hpp"
#include "snn/network.hpp"

namespace snn {

/// Highest input-derivative order to propagate through the network.
/// Must cover every derivative appearing in the active differential operator.
struct DiffConfig {
  int max_input_order = 2;  // 0, 1 or 2
};

/// Activation of the subspace layer. The linear variant exists for tests
/// that check scaling identities on the pre-activation part; everything
/// in-tree uses tanh.
enum class FinalActivation { tanh, linear };

/// Basis functions and their input derivatives at a batch of points.
/// Row i = point i, column j = basis function j. Second derivatives are the
/// Hessian diagonal only (no in-scope operator needs mixed terms).
struct BasisEval {
  Matrix points;               // d x n, the evaluation points
  Matrix phi;                  // n x M
  std::vector<Matrix> dphi;    // per input dim p: n x M, entries dphi_j/dx_p
  std::vector<Matrix> d2phi;   // per input dim p: n x M, entries d2phi_j/dx_p^2

  Eigen::Index num_points() const { return phi.rows(); }
  Eigen::Index num_basis() const { return phi.cols(); }
};

/// Exact basis values and input derivatives at each column of points (d x n),
/// by analytic value/first/second-derivative propagation through the layers.
BasisEval forward_with_input_derivs(const Params& params, const Matrix& points,
                                    const DiffConfig& cfg = {},
                                    FinalActivation final_act = FinalActivation::tanh);

/// One weighted sum-of-squares term over a point set:
///   sum_i w_i * ( sum_p c2_p(x_i) u_pp + sum_p c1_p(x_i) u_p + c0(x_i) u - target_i )^2
/// with u = omega . phi. Coefficient vectors may be empty (absent term).
struct PointTermBlock {
  Matrix points;            // d x n
  Vector weights;           // n, positive
  Vector c0;                // n or empty
  std::vector<Vector> c1;   // d entries (each n) or empty
  std::vector<Vector> c2;   // d entries (each n) or empty
  Vector target;            // n

  int max_order() const { return c2.empty() ? (c1.empty() ? 0 : 1) : 2; }
};

/// Periodic-pair term: sum_i w_i * (u(left_i) - u(right_i))^2.
struct PairTermBlock {
  Matrix left;   // d x n
  Matrix right;  // d x n
  Vector weights;
};

/// A scalar loss assembled from the supported primitives: weighted sums of
/// squared affine combinations of (phi, input derivatives). Anything else is
/// rejected with ConstructionError.
struct LossSpec {
  std::vector<PointTermBlock> point_terms;
  std::vector<PairTermBlock> pair_terms;
  Coefficients omega;
  bool train_omega = false;
};

struct LossGrad {
  double value = 0.0;
  Params param_grad;
  Vector omega_grad;  // empty unless spec.train_omega
};

/// Loss value and its exact gradient with respect to every weight and bias
/// (reverse accumulation through the derivative-propagation recursion), plus
/// d(loss)/d(omega) when requested.
LossGrad loss_and_param_grad(const Params& params, const LossSpec& spec);

/// Loss value only (shares the forward path of loss_and_param_grad).
double loss_value(const Params& params, const LossSpec& spec);

}  // namespace snn
