#include "snn/linalg.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace snn {

namespace {

// Legendre polynomial P_q and its derivative at x, by the three-term
// recurrence.
std::pair<double, double> legendre(int q, double x) {
  double p0 = 1.0, p1 = x;
  if (q == 0) return {1.0, 0.0};
  for (int k = 2; k <= q; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  double dp = q * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

std::pair<Vector, Vector> compute_gauss_legendre(int q) {
  Vector nodes(q), weights(q);
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess for the i-th root.
    double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double dx = 1.0;
    double dp = 1.0;
    for (int iter = 0; iter < 100 && std::abs(dx) > 1e-15; ++iter) {
      auto [p, d] = legendre(q, x);
      dp = d;
      dx = -p / d;
      x += dx;
    }
    // One clean-up step so the residual is at roundoff.
    {
      auto [p, d] = legendre(q, x);
      dp = d;
      x -= p / d;
    }
    nodes[q - 1 - i] = x;
    nodes[i] = -x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) {
    nodes[q / 2] = 0.0;
    auto [p, d] = legendre(q, 0.0);
    (void)p;
    weights[q / 2] = 2.0 / (d * d);
  }
  return {nodes, weights};
}

}  // namespace

std::pair<Vector, Vector> gauss_legendre(int q) {
  if (q < 1 || q > 64)
    throw ConfigError("gauss_legendre: point count must be in [1, 64], got " + std::to_string(q));
  static std::map<int, std::pair<Vector, Vector>> cache;
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, compute_gauss_legendre(q)).first;
  return it->second;
}

QuadratureRule1D composite_rule(double a, double b, int subintervals, int points_per_subinterval) {
  if (!(a < b))
    throw ConfigError("composite_rule: need a < b, got a=" + std::to_string(a) +
                      ", b=" + std::to_string(b));
  if (subintervals < 1) throw ConfigError("composite_rule: subintervals must be >= 1");
  auto [ref_nodes, ref_weights] = gauss_legendre(points_per_subinterval);

  const int q = points_per_subinterval;
  QuadratureRule1D rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(static_cast<Eigen::Index>(subintervals) * q);
  rule.weights.resize(rule.nodes.size());
  const double h = (b - a) / subintervals;
  for (int s = 0; s < subintervals; ++s) {
    const double lo = a + s * h;
    const double mid = lo + 0.5 * h;
    for (int j = 0; j < q; ++j) {
      rule.nodes[s * q + j] = mid + 0.5 * h * ref_nodes[j];
      rule.weights[s * q + j] = 0.5 * h * ref_weights[j];
    }
  }
  return rule;
}

QuadratureRule2D tensor_rule(const QuadratureRule1D& rx, const QuadratureRule1D& ry) {
  QuadratureRule2D rule;
  const Eigen::Index nx = rx.size(), ny = ry.size();
  rule.points.resize(2, nx * ny);
  rule.weights.resize(nx * ny);
  for (Eigen::Index iy = 0; iy < ny; ++iy) {
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
      const Eigen::Index k = iy * nx + ix;
      rule.points(0, k) = rx.nodes[ix];
      rule.points(1, k) = ry.nodes[iy];
      rule.weights[k] = rx.weights[ix] * ry.weights[iy];
    }
  }
  return rule;
}

Vector solve_least_squares(const Matrix& A, const Vector& b, double rcond) {
  if (A.rows() != b.size())
    throw DimensionError("solve_least_squares: A has " + std::to_string(A.rows()) +
                         " rows but b has " + std::to_string(b.size()) + " entries");
  if (!A.allFinite() || !b.allFinite())
    throw NumericError("solve_least_squares: non-finite entries in A or b");
  Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rcond);
  return svd.solve(b);
}

Vector row_normalize(Matrix& A, Vector& b) {
  if (A.rows() != b.size())
    throw DimensionError("row_normalize: A has " + std::to_string(A.rows()) + " rows but b has " +
                         std::to_string(b.size()) + " entries");
  Vector divisors(A.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const double m = A.row(i).cwiseAbs().maxCoeff();
    if (m == 0.0)
      throw AssemblyError("row_normalize: row " + std::to_string(i) + " is all zero");
    A.row(i) /= m;
    b[i] /= m;
    divisors[i] = m;
  }
  return divisors;
}

}  // namespace snn
