#pragma once

#include <vector>

#include "snn/linalg.hpp"
#include "snn/problems.hpp"

namespace snn {

/// Collocation points for the discrete form: an interior set plus one
/// realized point group per problem condition.
struct CollocationSet {
  Matrix interior;  // d x N
  std::vector<ConditionGroup> conditions;

  Eigen::Index num_interior() const { return interior.cols(); }
  Eigen::Index num_condition_rows() const;
};

/// Quadrature points for the integral form: an interior rule plus one
/// weighted rule per condition group.
struct QuadratureSet {
  Matrix interior_points;  // d x n
  Vector interior_weights;
  std::vector<ConditionGroup> conditions;

  Eigen::Index num_interior() const { return interior_points.cols(); }
};

/// Tensor-product equally spaced grid; inclusive grids contain the endpoints
/// (counts >= 2 then), exclusive ones are strictly interior. Dimension 0
/// varies fastest.
Matrix uniform_grid(const Box& domain, const std::vector<int>& counts, bool inclusive);

/// Equally spaced points along each edge of the domain boundary.
/// 1D: exactly the two endpoints. 2D: a counterclockwise walk where each
/// edge carries `per_edge` points and owns its starting corner, so corners
/// are never duplicated. Returned per edge.
std::vector<Matrix> boundary_points(const Box& domain, int per_edge);

/// Realize the discrete collocation preset for a problem: inclusive interior
/// grid plus per-group condition points (group_counts are per face).
CollocationSet sample_collocation(const PdeProblem& problem, const DiscreteSamplingSpec& spec);

/// Realize the integral-form preset: composite Gauss-Legendre interior rule
/// plus one weighted boundary rule per condition group. A 0-dimensional face
/// (1D problem boundary) degenerates to its endpoint with unit weight.
QuadratureSet quadrature_set(const PdeProblem& problem, const IntegralSamplingSpec& spec);

}  // namespace snn
