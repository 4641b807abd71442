#include "snn/sampling.hpp"

#include <string>

#include "snn/errors.hpp"

namespace snn {

Eigen::Index CollocationSet::num_condition_rows() const {
  Eigen::Index n = 0;
  for (const auto& g : conditions) n += g.size();
  return n;
}

namespace {

Vector linspace(double a, double b, int n, bool inclusive) {
  Vector v(n);
  if (inclusive) {
    if (n < 2) throw ConfigError("uniform_grid: inclusive grids need at least 2 points per dim");
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  } else {
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * (i + 1) / (n + 1);
  }
  return v;
}

Vector eval_target(const ScalarField& f, const Matrix& points) {
  Vector out = Vector::Zero(points.cols());
  if (f)
    for (Eigen::Index i = 0; i < points.cols(); ++i) out[i] = f(points.col(i));
  return out;
}

// Points on one face of a 2D box: `count` of them along the free dimension.
Matrix face_points_1d_free(const Box& domain, Face face, const Vector& free_coords) {
  const int fixed = face.dim;
  const int free = 1 - fixed;
  Matrix pts(2, free_coords.size());
  const double v = face.side == 0 ? domain.lo[fixed] : domain.hi[fixed];
  for (Eigen::Index i = 0; i < free_coords.size(); ++i) {
    pts(fixed, i) = v;
    pts(free, i) = free_coords[i];
  }
  return pts;
}

// Counterclockwise boundary walk of a 2D box, `per_edge` points per edge,
// each edge owning its starting corner. Edge order: bottom, right, top, left.
std::vector<Matrix> boundary_walk(const Box& domain, int per_edge) {
  const double x0 = domain.lo[0], x1 = domain.hi[0];
  const double y0 = domain.lo[1], y1 = domain.hi[1];
  const int c = per_edge;
  auto edge = [&](double ax, double ay, double bx, double by) {
    Matrix pts(2, c);
    for (int i = 0; i < c; ++i) {
      const double s = static_cast<double>(i) / c;  // end corner excluded
      pts(0, i) = ax + (bx - ax) * s;
      pts(1, i) = ay + (by - ay) * s;
    }
    return pts;
  };
  return {edge(x0, y0, x1, y0), edge(x1, y0, x1, y1), edge(x1, y1, x0, y1),
          edge(x0, y1, x0, y0)};
}

ConditionGroup realize_dirichlet_discrete(const PdeProblem& problem, const ConditionSpec& spec,
                                          int per_face) {
  ConditionGroup group;
  group.kind = ConditionKind::dirichlet_trace;
  const Box& box = problem.domain;
  if (box.dim() == 1) {
    Matrix pts(1, static_cast<Eigen::Index>(spec.faces.size()));
    for (std::size_t i = 0; i < spec.faces.size(); ++i)
      pts(0, static_cast<Eigen::Index>(i)) =
          spec.faces[i].side == 0 ? box.lo[spec.faces[i].dim] : box.hi[spec.faces[i].dim];
    group.points = pts;
  } else if (spec.faces.size() == 4) {
    // Whole-boundary loop: corner-owning walk.
    auto edges = boundary_walk(box, per_face);
    Matrix pts(2, 4 * static_cast<Eigen::Index>(per_face));
    Eigen::Index at = 0;
    for (const auto& e : edges) {
      pts.middleCols(at, e.cols()) = e;
      at += e.cols();
    }
    group.points = pts;
  } else {
    // Individual faces: inclusive points along each face.
    Matrix pts(2, static_cast<Eigen::Index>(spec.faces.size()) * per_face);
    Eigen::Index at = 0;
    for (const auto& face : spec.faces) {
      const int free = 1 - face.dim;
      const Vector coords = linspace(box.lo[free], box.hi[free], per_face, true);
      pts.middleCols(at, per_face) = face_points_1d_free(box, face, coords);
      at += per_face;
    }
    group.points = pts;
  }
  group.target = eval_target(spec.target, group.points);
  return group;
}

ConditionGroup realize_periodic_discrete(const PdeProblem& problem, const ConditionSpec& spec,
                                         int count) {
  ConditionGroup group;
  group.kind = ConditionKind::periodic_pair;
  const Box& box = problem.domain;
  const int pd = spec.faces.at(0).dim;
  if (box.dim() == 1) {
    group.points = Matrix::Constant(1, 1, box.lo[pd]);
    group.points_right = Matrix::Constant(1, 1, box.hi[pd]);
  } else {
    const int free = 1 - pd;
    const Vector coords = linspace(box.lo[free], box.hi[free], count, true);
    group.points = face_points_1d_free(box, Face{pd, 0}, coords);
    group.points_right = face_points_1d_free(box, Face{pd, 1}, coords);
  }
  group.target = Vector::Zero(group.points.cols());
  return group;
}

ConditionGroup realize_dirichlet_integral(const PdeProblem& problem, const ConditionSpec& spec,
                                          int subintervals, int points_per) {
  ConditionGroup group;
  group.kind = ConditionKind::dirichlet_trace;
  const Box& box = problem.domain;
  if (box.dim() == 1) {
    // 0-dimensional boundary: endpoint sum with unit weights.
    Matrix pts(1, static_cast<Eigen::Index>(spec.faces.size()));
    for (std::size_t i = 0; i < spec.faces.size(); ++i)
      pts(0, static_cast<Eigen::Index>(i)) =
          spec.faces[i].side == 0 ? box.lo[spec.faces[i].dim] : box.hi[spec.faces[i].dim];
    group.points = pts;
    group.quad_weights = Vector::Ones(pts.cols());
  } else {
    std::vector<Matrix> pieces;
    std::vector<Vector> weights;
    Eigen::Index total = 0;
    for (const auto& face : spec.faces) {
      const int free = 1 - face.dim;
      const QuadratureRule1D rule =
          composite_rule(box.lo[free], box.hi[free], subintervals, points_per);
      pieces.push_back(face_points_1d_free(box, face, rule.nodes));
      weights.push_back(rule.weights);
      total += rule.size();
    }
    group.points.resize(2, total);
    group.quad_weights.resize(total);
    Eigen::Index at = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      group.points.middleCols(at, pieces[i].cols()) = pieces[i];
      group.quad_weights.segment(at, weights[i].size()) = weights[i];
      at += pieces[i].cols();
    }
  }
  group.target = eval_target(spec.target, group.points);
  return group;
}

ConditionGroup realize_periodic_integral(const PdeProblem& problem, const ConditionSpec& spec,
                                         int subintervals, int points_per) {
  ConditionGroup group;
  group.kind = ConditionKind::periodic_pair;
  const Box& box = problem.domain;
  const int pd = spec.faces.at(0).dim;
  if (box.dim() == 1) {
    group.points = Matrix::Constant(1, 1, box.lo[pd]);
    group.points_right = Matrix::Constant(1, 1, box.hi[pd]);
    group.quad_weights = Vector::Ones(1);
  } else {
    const int free = 1 - pd;
    const QuadratureRule1D rule =
        composite_rule(box.lo[free], box.hi[free], subintervals, points_per);
    group.points = face_points_1d_free(box, Face{pd, 0}, rule.nodes);
    group.points_right = face_points_1d_free(box, Face{pd, 1}, rule.nodes);
    group.quad_weights = rule.weights;
  }
  group.target = Vector::Zero(group.points.cols());
  return group;
}

}  // namespace

Matrix uniform_grid(const Box& domain, const std::vector<int>& counts, bool inclusive) {
  if (static_cast<int>(counts.size()) != domain.dim())
    throw ConfigError("uniform_grid: need one count per dimension");
  std::vector<Vector> axes;
  Eigen::Index total = 1;
  for (int d = 0; d < domain.dim(); ++d) {
    if (counts[static_cast<std::size_t>(d)] < 1)
      throw ConfigError("uniform_grid: counts must be positive");
    axes.push_back(linspace(domain.lo[d], domain.hi[d], counts[static_cast<std::size_t>(d)],
                            inclusive));
    total *= axes.back().size();
  }
  Matrix pts(domain.dim(), total);
  if (domain.dim() == 1) {
    pts.row(0) = axes[0].transpose();
  } else {
    Eigen::Index k = 0;
    for (Eigen::Index iy = 0; iy < axes[1].size(); ++iy)
      for (Eigen::Index ix = 0; ix < axes[0].size(); ++ix, ++k) {
        pts(0, k) = axes[0][ix];
        pts(1, k) = axes[1][iy];
      }
  }
  return pts;
}

std::vector<Matrix> boundary_points(const Box& domain, int per_edge) {
  if (domain.dim() == 1) {
    return {Matrix::Constant(1, 1, domain.lo[0]), Matrix::Constant(1, 1, domain.hi[0])};
  }
  if (per_edge < 2) throw ConfigError("boundary_points: need at least 2 points per edge");
  return boundary_walk(domain, per_edge);
}

CollocationSet sample_collocation(const PdeProblem& problem, const DiscreteSamplingSpec& spec) {
  if (spec.group_counts.size() != problem.conditions.size())
    throw ConfigError("sample_collocation: need one count per condition group (" +
                      std::to_string(problem.conditions.size()) + " groups)");
  CollocationSet set;
  set.interior = uniform_grid(problem.domain, spec.interior_counts, true);
  for (std::size_t g = 0; g < problem.conditions.size(); ++g) {
    const auto& cond = problem.conditions[g];
    const int count = spec.group_counts[g];
    if (cond.kind == ConditionKind::dirichlet_trace)
      set.conditions.push_back(realize_dirichlet_discrete(problem, cond, count));
    else
      set.conditions.push_back(realize_periodic_discrete(problem, cond, count));
  }
  return set;
}

QuadratureSet quadrature_set(const PdeProblem& problem, const IntegralSamplingSpec& spec) {
  if (spec.group_rules.size() != problem.conditions.size())
    throw ConfigError("quadrature_set: need one (subintervals, points) rule per condition group (" +
                      std::to_string(problem.conditions.size()) + " groups)");
  if (static_cast<int>(spec.interior_subintervals.size()) != problem.domain.dim())
    throw ConfigError("quadrature_set: need interior subintervals per dimension");

  QuadratureSet set;
  const Box& box = problem.domain;
  if (box.dim() == 1) {
    const QuadratureRule1D rule =
        composite_rule(box.lo[0], box.hi[0], spec.interior_subintervals[0], spec.interior_points);
    set.interior_points = rule.nodes.transpose();
    set.interior_weights = rule.weights;
  } else {
    const QuadratureRule1D rx =
        composite_rule(box.lo[0], box.hi[0], spec.interior_subintervals[0], spec.interior_points);
    const QuadratureRule1D ry =
        composite_rule(box.lo[1], box.hi[1], spec.interior_subintervals[1], spec.interior_points);
    const QuadratureRule2D rule = tensor_rule(rx, ry);
    set.interior_points = rule.points;
    set.interior_weights = rule.weights;
  }
  for (std::size_t g = 0; g < problem.conditions.size(); ++g) {
    const auto& cond = problem.conditions[g];
    const auto [s, q] = spec.group_rules[g];
    if (cond.kind == ConditionKind::dirichlet_trace)
      set.conditions.push_back(realize_dirichlet_integral(problem, cond, s, q));
    else
      set.conditions.push_back(realize_periodic_integral(problem, cond, s, q));
  }
  return set;
}

}  // namespace snn
