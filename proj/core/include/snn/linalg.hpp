#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "snn/errors.hpp"

namespace snn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// One-dimensional quadrature rule on an interval (a, b).
/// Nodes are strictly increasing, weights positive, sum(weights) == b - a.
struct QuadratureRule1D {
  Vector nodes;
  Vector weights;
  double a = 0.0;
  double b = 1.0;

  Eigen::Index size() const { return nodes.size(); }
};

/// Two-dimensional rule: points (2 x n) with positive weights summing to the
/// domain area.
struct QuadratureRule2D {
  Matrix points;  // 2 x n
  Vector weights;

  Eigen::Index size() const { return weights.size(); }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
///
/// Nodes are the roots of the Legendre polynomial P_q found by Newton
/// iteration (converged to 1e-15); results are cached per q. Exact for
/// polynomials of degree <= 2q - 1. Valid for 1 <= q <= 64.
std::pair<Vector, Vector> gauss_legendre(int q);

/// Composite Gauss-Legendre rule on (a, b): S subintervals, q points each.
QuadratureRule1D composite_rule(double a, double b, int subintervals, int points_per_subinterval);

/// Tensor product of two 1D rules. Point ordering: x index fastest.
QuadratureRule2D tensor_rule(const QuadratureRule1D& rx, const QuadratureRule1D& ry);

/// Minimum-norm least-squares solution of A x ~= b via SVD.
/// Singular values below rcond * sigma_max are treated as zero.
Vector solve_least_squares(const Matrix& A, const Vector& b, double rcond = 1e-14);

/// Divide every row of (A | b) by the row's maximum absolute value in A.
/// Throws AssemblyError naming the row index if a row of A is all zero.
/// Idempotent. Returns the per-row divisors that were applied.
Vector row_normalize(Matrix& A, Vector& b);

}  // namespace snn
