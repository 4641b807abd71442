#include <benchmark/benchmark.h>

#include "snn/linalg.hpp"
#include "snn/network.hpp"
#include "snn/problems.hpp"
#include "snn/sampling.hpp"
#include "snn/solver.hpp"

using namespace snn;

// Minimum-norm least squares at the collocation-system scale.
static void BM_LeastSquares(benchmark::State& state) {
  const Eigen::Index m = state.range(0), n = state.range(1);
  Matrix A = Matrix::Random(m, n);
  Vector b = Vector::Random(m);
  for (auto _ : state) {
    Vector x = solve_least_squares(A, b);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_LeastSquares)->Args({600, 300})->Args({1002, 300})->Args({2650, 300});

static void BM_AssembleCollocation(benchmark::State& state) {
  const PdeProblem prob = poisson2d();
  const Params p = init_elm(MlpConfig{2, {}, 300, 1}, 1.0);
  const CollocationSet colloc = sample_collocation(prob, prob.default_discrete);
  for (auto _ : state) {
    LinearSystem sys = assemble_snnd(p, prob, colloc);
    benchmark::DoNotOptimize(sys);
  }
}
BENCHMARK(BM_AssembleCollocation);

static void BM_AssembleGram(benchmark::State& state) {
  const PdeProblem prob = poisson2d();
  const Params p = init_elm(MlpConfig{2, {}, 300, 1}, 1.0);
  const QuadratureSet quad = quadrature_set(prob, prob.default_integral);
  for (auto _ : state) {
    LinearSystem sys = assemble_snni(p, prob, quad);
    benchmark::DoNotOptimize(sys);
  }
}
BENCHMARK(BM_AssembleGram);
