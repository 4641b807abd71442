#include "snn/metrics.hpp"

#include <cmath>

#include "snn/errors.hpp"

namespace snn {

namespace {

void check_pair(const Vector& approx, const Vector& exact, const char* who) {
  if (approx.size() != exact.size() || approx.size() == 0)
    throw DimensionError(std::string(who) + ": fields must have equal nonzero length");
}

}  // namespace

double rel_l2_discrete(const Vector& approx, const Vector& exact) {
  check_pair(approx, exact, "rel_l2_discrete");
  const double denom = exact.norm();
  if (denom == 0.0) throw NormError("rel_l2_discrete: exact field is identically zero");
  return (approx - exact).norm() / denom;
}

double rel_linf(const Vector& approx, const Vector& exact) {
  check_pair(approx, exact, "rel_linf");
  const double denom = exact.cwiseAbs().maxCoeff();
  if (denom == 0.0) throw NormError("rel_linf: exact field is identically zero");
  return (approx - exact).cwiseAbs().maxCoeff() / denom;
}

double rel_l2_integral(const Vector& approx_at_quad, const Vector& exact_at_quad,
                       const Vector& weights) {
  check_pair(approx_at_quad, exact_at_quad, "rel_l2_integral");
  if (weights.size() != approx_at_quad.size())
    throw DimensionError("rel_l2_integral: weights length mismatch");
  const double denom = (weights.array() * exact_at_quad.array().square()).sum();
  if (denom <= 0.0) throw NormError("rel_l2_integral: exact field is identically zero");
  const double num =
      (weights.array() * (approx_at_quad - exact_at_quad).array().square()).sum();
  return std::sqrt(num / denom);
}

}  // namespace snn
