#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "snn/autodiff.hpp"
#include "snn/linalg.hpp"

namespace snn {

using ScalarField = std::function<double(const Vector&)>;

/// Axis-aligned box in d <= 2 dimensions. For space-time problems the
/// coordinates are ordered (x, t) with time last.
struct Box {
  Vector lo;
  Vector hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double measure() const;
  double edge_length(int d) const { return hi[d] - lo[d]; }
};

/// Linear operator A u = sum_p c2_p d2u/dx_p^2 + sum_p c1_p du/dx_p + c0 u
/// with coefficient functions of the point. Empty vectors / null c0 mean the
/// term is absent.
struct DifferentialOperator {
  ScalarField c0;
  std::vector<ScalarField> c1;
  std::vector<ScalarField> c2;

  int max_order() const { return !c2.empty() ? 2 : (!c1.empty() ? 1 : 0); }

  /// Constant-coefficient helper; pass empty vectors / nan-free zeros freely.
  static DifferentialOperator constant(std::vector<double> c2, std::vector<double> c1,
                                       double c0);

  /// Coefficients evaluated at each column of points; empty if absent.
  Vector eval_c0(const Matrix& points) const;
  std::vector<Vector> eval_c1(const Matrix& points) const;
  std::vector<Vector> eval_c2(const Matrix& points) const;
};

enum class ConditionKind { dirichlet_trace, periodic_pair };

/// One face of the box: side 0 = lower, 1 = upper in dimension `dim`.
struct Face {
  int dim;
  int side;
};

/// Declarative condition: which faces it constrains and the target data.
/// For periodic pairs, faces[0].dim names the paired dimension and the
/// target is identically zero.
struct ConditionSpec {
  ConditionKind kind = ConditionKind::dirichlet_trace;
  std::vector<Face> faces;
  ScalarField target;  // null => zero
  std::string label;
};

/// A condition realized on concrete points. For periodic pairs, `points`
/// holds the left coordinates and `points_right` the paired right ones.
/// quad_weights is empty for the discrete (collocation) form.
struct ConditionGroup {
  ConditionKind kind = ConditionKind::dirichlet_trace;
  Matrix points;
  Matrix points_right;
  Vector target;
  Vector quad_weights;

  Eigen::Index size() const { return points.cols(); }
};

/// Default per-problem sampling counts (the experiment presets).
struct DiscreteSamplingSpec {
  std::vector<int> interior_counts;  // per-dim inclusive-grid counts
  std::vector<int> group_counts;     // per condition group: points per face
};
struct IntegralSamplingSpec {
  std::vector<int> interior_subintervals;  // per-dim S
  int interior_points = 1;                 // q per subinterval
  std::vector<std::array<int, 2>> group_rules;  // per condition group: {S, q}
};

/// Declarative PDE problem: domain, operator, conditions, data, and the
/// manufactured exact solution when known.
struct PdeProblem {
  std::string name;
  Box domain;
  DifferentialOperator op;
  std::vector<ConditionSpec> conditions;
  ScalarField source;
  std::optional<ScalarField> exact;
  std::vector<ScalarField> exact_grad;       // closed forms, for verification
  std::vector<ScalarField> exact_hess_diag;  // closed forms, for verification
  DiscreteSamplingSpec default_discrete;
  IntegralSamplingSpec default_integral;
};

/// (A phi_j)(x_i) for every basis function at every evaluated point.
/// Throws ConfigError if `be` lacks a derivative order the operator needs.
Matrix apply_operator(const DifferentialOperator& op, const BasisEval& be);

/// Condition rows (B phi_j)(x_i) and the target vector for a realized group.
/// Dirichlet rows are basis traces; periodic rows are left-right differences.
std::pair<Matrix, Vector> apply_condition(const ConditionGroup& group, const Params& params);

/// Built-in problems from the experiments.
PdeProblem helmholtz1d();
PdeProblem poisson2d();
PdeProblem advection();
PdeProblem parabolic1d();
PdeProblem anisotropic2d(double k1, double k2);

/// By-name constructor; k1/k2 apply to anisotropic2d only.
/// Unknown name -> ConfigError.
PdeProblem builtin(const std::string& name, double k1 = 1.0, double k2 = 1.0);

}  // namespace snn
