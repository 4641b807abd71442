#pragma once

#include <functional>
#include <string>

#include "snn/linalg.hpp"

namespace snn {

struct ErrorSummary {
  double rel_l2 = 0.0;
  double rel_linf = 0.0;
  Eigen::Index n_eval_points = 0;
  std::string form;  // "discrete" | "integral"
};

/// sqrt(sum |approx - exact|^2) / sqrt(sum |exact|^2).
/// Throws NormError when exact is identically zero.
double rel_l2_discrete(const Vector& approx, const Vector& exact);

/// max |approx - exact| / max |exact| (relative sup norm).
double rel_linf(const Vector& approx, const Vector& exact);

/// sqrt(int |u - u*|^2) / sqrt(int |u*|^2) by the supplied rule, with the
/// two fields evaluated at the rule's points.
double rel_l2_integral(const Vector& approx_at_quad, const Vector& exact_at_quad,
                       const Vector& weights);

}  // namespace snn
