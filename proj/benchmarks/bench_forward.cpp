#include <benchmark/benchmark.h>

#include "snn/autodiff.hpp"
#include "snn/network.hpp"
#include "snn/problems.hpp"
#include "snn/sampling.hpp"
#include "snn/training.hpp"

using namespace snn;

namespace {

Params experiment_net(int d) {
  return init_xavier(MlpConfig{d, {100, 100, 100, 100}, 300, 1});
}

}  // namespace

// Basis evaluation with first and second input derivatives, per point batch.
static void BM_ForwardWithDerivs(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const Params p = experiment_net(2);
  Matrix pts = Matrix::Random(2, n);
  for (auto _ : state) {
    BasisEval be = forward_with_input_derivs(p, pts, DiffConfig{2});
    benchmark::DoNotOptimize(be);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ForwardWithDerivs)->Arg(256)->Arg(1024)->Arg(4096);

// One training epoch's work: loss and full parameter gradient.
static void BM_LossAndGradEpoch(benchmark::State& state) {
  const PdeProblem prob = state.range(0) == 0 ? helmholtz1d() : poisson2d();
  const Params p = experiment_net(prob.domain.dim());
  const CollocationSet colloc = sample_collocation(prob, prob.default_discrete);
  const LossSpec spec =
      build_loss_discrete(prob, colloc, Vector::Ones(300), false, 1.0);
  for (auto _ : state) {
    LossGrad lg = loss_and_param_grad(p, spec);
    benchmark::DoNotOptimize(lg);
  }
  state.SetLabel(prob.name);
}
BENCHMARK(BM_LossAndGradEpoch)->Arg(0)->Arg(1);
