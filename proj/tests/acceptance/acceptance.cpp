// Acceptance suite: one numbered check per release criterion, each printing
// a single PASS/FAIL line. Run with no arguments for the full suite, or pass
// criterion numbers (and/or "baseline-smoke") to run a subset.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#ifdef __GLIBC__
#include <malloc.h>
#endif

#include "snn/config.hpp"
#include "snn/metrics.hpp"
#include "snn/solver.hpp"

using namespace snn;

namespace {

struct CheckResult {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && detail.size() < 4000) detail += (detail.empty() ? "" : "; ") + what;
    pass = pass && ok;
  }
  void note(const std::string& what) {
    if (detail.size() < 4000) detail += (detail.empty() ? "" : "; ") + what;
  }
};

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

// Best-of-3-seeds runner: stops early once the band is met.
SolveReport best_of_seeds(const RunConfig& base, double band, std::string* detail) {
  SolveReport best;
  bool have = false;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    RunConfig cfg = base;
    cfg.network.seed = seed;
    const SolveReport rep = snn_solve(cfg.make_problem(), cfg.make_options());
    if (!have || rep.rel_l2 < best.rel_l2) {
      best = rep;
      have = true;
    }
    if (rep.rel_l2 <= band) break;
  }
  if (detail)
    *detail += " rel_l2=" + sci(best.rel_l2) + " epochs=" + std::to_string(best.epochs_used);
  return best;
}

// ---------------------------------------------------------------------------
// 1. Derivative oracle: finite differences on 20 random small networks.

Params small_random_net(int d, std::uint64_t seed) {
  SplitMix64 pick(seed * 7919);
  const int depth = 1 + static_cast<int>(pick.uniform() * 2);     // 1..2 hidden layers
  const int width = 3 + static_cast<int>(pick.uniform() * 6);     // 3..8
  const int M = 2 + static_cast<int>(pick.uniform() * 5);         // 2..6
  std::vector<int> hidden(static_cast<std::size_t>(depth), width);
  Params p = init_xavier(MlpConfig{d, hidden, M, seed});
  SplitMix64 rng(seed * 131 + 7);
  for (auto& b : p.biases)
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = rng.symmetric(0.4);
  return p;
}

LossSpec oracle_loss_spec(const Params& p, int d, bool second_order, SplitMix64& rng) {
  const int n = 5;
  PointTermBlock blk;
  blk.points.resize(d, n);
  for (Eigen::Index i = 0; i < blk.points.size(); ++i) blk.points.data()[i] = rng.symmetric(1.0);
  blk.weights = Vector::Constant(n, 1.0 / n);
  blk.c0 = Vector::Constant(n, -10.0);
  if (second_order) {
    blk.c2.assign(static_cast<std::size_t>(d), Vector::Ones(n));
  } else {
    blk.c1.assign(static_cast<std::size_t>(d), Vector::Ones(n));
    blk.c1[0] = Vector::Constant(n, 2.0);
  }
  blk.target = Vector::LinSpaced(n, -1.0, 1.0);
  LossSpec spec;
  spec.point_terms.push_back(std::move(blk));
  spec.omega = Vector::Ones(p.subspace_dim());
  return spec;
}

CheckResult criterion_1() {
  CheckResult r;
  const double t0 = now_seconds();
  double worst_input = 0.0, worst_param = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + trial % 2;
    const std::uint64_t seed = 100 + static_cast<std::uint64_t>(trial);
    const Params p = small_random_net(d, seed);
    SplitMix64 rng(seed);

    // Input derivatives against central differences of the basis values.
    Matrix pts(d, 3);
    for (Eigen::Index i = 0; i < pts.size(); ++i) pts.data()[i] = rng.symmetric(1.2);
    const BasisEval be = forward_with_input_derivs(p, pts, DiffConfig{2});
    for (Eigen::Index i = 0; i < 3; ++i) {
      for (Eigen::Index j = 0; j < be.num_basis(); ++j) {
        for (int dim = 0; dim < d; ++dim) {
          const double h1 = 1e-5, h2 = 1e-4;
          Matrix stencil(d, 5);
          for (int s = 0; s < 5; ++s) stencil.col(s) = pts.col(i);
          stencil(dim, 0) += h1;
          stencil(dim, 1) -= h1;
          stencil(dim, 2) += h2;
          stencil(dim, 3) -= h2;
          const BasisEval sb = forward_with_input_derivs(p, stencil, DiffConfig{0});
          const double fd1 = (sb.phi(0, j) - sb.phi(1, j)) / (2.0 * h1);
          const double got1 = be.dphi[static_cast<std::size_t>(dim)](i, j);
          worst_input = std::max(
              worst_input, std::abs(got1 - fd1) / std::max({std::abs(fd1), std::abs(got1), 1e-2}));
          const double fd2 = (sb.phi(2, j) - 2.0 * sb.phi(4, j) + sb.phi(3, j)) / (h2 * h2);
          const double got2 = be.d2phi[static_cast<std::size_t>(dim)](i, j);
          worst_input = std::max(
              worst_input, std::abs(got2 - fd2) / std::max({std::abs(fd2), std::abs(got2), 1e-1}));
        }
      }
    }

    // Parameter gradients of both loss forms against central differences.
    for (bool second_order : {false, true}) {
      LossSpec spec = oracle_loss_spec(p, d, second_order, rng);
      const LossGrad lg = loss_and_param_grad(p, spec);
      const double h = 1e-6;
      for (std::size_t k = 0; k < p.weights.size(); ++k) {
        for (Eigen::Index f = 0; f < p.weights[k].size(); ++f) {
          Params plus = p, minus = p;
          plus.weights[k].data()[f] += h;
          minus.weights[k].data()[f] -= h;
          const double fd = (loss_value(plus, spec) - loss_value(minus, spec)) / (2.0 * h);
          const double got = lg.param_grad.weights[k].data()[f];
          worst_param = std::max(
              worst_param, std::abs(got - fd) / std::max({std::abs(fd), std::abs(got), 1e-3}));
        }
        for (Eigen::Index f = 0; f < p.biases[k].size(); ++f) {
          Params plus = p, minus = p;
          plus.biases[k][f] += h;
          minus.biases[k][f] -= h;
          const double fd = (loss_value(plus, spec) - loss_value(minus, spec)) / (2.0 * h);
          const double got = lg.param_grad.biases[k][f];
          worst_param = std::max(
              worst_param, std::abs(got - fd) / std::max({std::abs(fd), std::abs(got), 1e-3}));
        }
      }
    }
  }
  const double elapsed = now_seconds() - t0;
  r.require(worst_input < 1e-5, "input-derivative mismatch " + sci(worst_input));
  r.require(worst_param < 1e-5, "parameter-gradient mismatch " + sci(worst_param));
  r.require(elapsed < 10.0, "runtime " + sci(elapsed) + " s >= 10 s");
  r.note("worst input " + sci(worst_input) + ", worst param " + sci(worst_param) + ", " +
         sci(elapsed) + " s");
  return r;
}

// ---------------------------------------------------------------------------
// 2. Quadrature exactness.

CheckResult criterion_2() {
  CheckResult r;
  const double t0 = now_seconds();
  for (int q = 1; q <= 10; ++q) {
    auto [nodes, weights] = gauss_legendre(q);
    for (int k = 0; k <= 2 * q - 1; ++k) {
      double sum = 0.0;
      for (Eigen::Index i = 0; i < nodes.size(); ++i) sum += weights[i] * std::pow(nodes[i], k);
      const double expected = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      r.require(std::abs(sum - expected) <= 1e-13 * std::max(1.0, std::abs(expected)),
                "monomial x^" + std::to_string(k) + " at q=" + std::to_string(q));
    }
  }
  {
    auto [nodes, weights] = gauss_legendre(5);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) sum += weights[i] * std::pow(nodes[i], 8);
    r.require(std::abs(sum - 2.0 / 9.0) < 1e-14, "int x^8 != 2/9");
  }
  {
    const QuadratureRule1D r1 = composite_rule(0.0, 1.0, 8, 4);
    const QuadratureRule2D rule = tensor_rule(r1, r1);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rule.size(); ++i)
      sum += rule.weights[i] * std::sin(M_PI * rule.points(0, i)) * std::sin(M_PI * rule.points(1, i));
    r.require(std::abs(sum - 4.0 / (M_PI * M_PI)) < 1e-12, "int sin sin != 4/pi^2");
  }
  const double elapsed = now_seconds() - t0;
  r.require(elapsed < 1.0, "runtime >= 1 s");
  r.note(sci(elapsed) + " s");
  return r;
}

// ---------------------------------------------------------------------------
// 3. Least-squares examples.

CheckResult criterion_3() {
  CheckResult r;
  const double t0 = now_seconds();
  {
    Matrix A = Matrix::Identity(2, 2);
    Vector b(2);
    b << 1, 2;
    const Vector x = solve_least_squares(A, b);
    r.require(std::abs(x[0] - 1.0) < 1e-14 && std::abs(x[1] - 2.0) < 1e-14, "identity solve");
  }
  {
    Matrix A(2, 1);
    A << 1, 1;
    Vector b(2);
    b << 0, 2;
    r.require(std::abs(solve_least_squares(A, b)[0] - 1.0) < 1e-14, "normal-equation example");
  }
  {
    Matrix A(2, 2);
    A << 1, 1, 1, 1;
    Vector b(2);
    b << 2, 2;
    const Vector x = solve_least_squares(A, b);
    r.require(std::abs(x[0] - 1.0) < 1e-12 && std::abs(x[1] - 1.0) < 1e-12,
              "minimum-norm example");
  }
  {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      const int m = 2 + static_cast<int>(rng.uniform() * 7);
      const int n = 1 + static_cast<int>(rng.uniform() * 7);
      Matrix A(m, n);
      Vector b(m);
      for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = rng.symmetric(1.0);
      for (int i = 0; i < m; ++i) b[i] = rng.symmetric(1.0);
      const Vector x = solve_least_squares(A, b);
      const double base = (A * x - b).norm();
      for (int k = 0; k < 100; ++k) {
        Vector d(n);
        for (int j = 0; j < n; ++j) d[j] = rng.symmetric(1.0);
        d *= 1e-4 / d.norm();
        r.require((A * (x + d) - b).norm() >= base - 1e-12, "perturbation reduced residual");
      }
    }
  }
  const double elapsed = now_seconds() - t0;
  r.require(elapsed < 1.0, "runtime >= 1 s");
  r.note(sci(elapsed) + " s");
  return r;
}

// ---------------------------------------------------------------------------
// 4-8. Experiment presets.

CheckResult criterion_4() {
  CheckResult r;
  for (const auto& [preset, band] : {std::pair<const char*, double>{"helmholtz-snnd", 1e-8},
                                     {"helmholtz-snni", 1e-5},
                                     {"helmholtz-elm", 1e-4}}) {
    std::string detail = preset;
    const double t0 = now_seconds();
    const SolveReport rep = best_of_seeds(preset_config(preset), band, &detail);
    const double elapsed = now_seconds() - t0;
    r.require(rep.rel_l2 <= band, detail + " > " + sci(band));
    r.require(rep.epochs_used <= 5000, detail + " epochs > 5000");
    r.require(elapsed <= 15.0 * 60.0 * 3.0, detail + " runtime");
    r.note(detail + " (" + sci(elapsed) + " s)");
  }
  return r;
}

CheckResult criterion_5() {
  CheckResult r;
  for (const auto& [preset, band] : {std::pair<const char*, double>{"poisson-snnd", 1e-7},
                                     {"poisson-snni", 1e-4}}) {
    std::string detail = preset;
    const SolveReport rep = best_of_seeds(preset_config(preset), band, &detail);
    r.require(rep.rel_l2 <= band, detail + " > " + sci(band));
    r.require(rep.epochs_used <= 1000, detail + " epochs > 1000");
    r.note(detail);
  }
  return r;
}

CheckResult criterion_6() {
  CheckResult r;
  int snnd_epochs = -1;
  std::uint64_t snnd_seed = 1;
  {
    std::string detail = "advection-snnd";
    RunConfig cfg = preset_config("advection-snnd");
    SolveReport best;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      cfg.network.seed = seed;
      const SolveReport rep = snn_solve(cfg.make_problem(), cfg.make_options());
      if (best.omega.size() == 0 || rep.rel_l2 < best.rel_l2) {
        best = rep;
        snnd_seed = seed;
        snnd_epochs = rep.epochs_used;
      }
      if (rep.rel_l2 <= 1e-6) break;
    }
    detail += " rel_l2=" + sci(best.rel_l2) + " epochs=" + std::to_string(best.epochs_used);
    r.require(best.rel_l2 <= 1e-6, detail + " > 1e-06");
    r.require(best.epochs_used <= 500, detail + " epochs > 500");
    r.note(detail);
  }
  {
    std::string detail = "advection-snni";
    const SolveReport rep = best_of_seeds(preset_config("advection-snni"), 1e-3, &detail);
    r.require(rep.rel_l2 <= 1e-3, detail + " > 1e-03");
    r.require(rep.epochs_used <= 500, detail + " epochs > 500");
    r.note(detail);
  }
  {
    // Ablation: adding the initial-boundary loss term slows training on the
    // same seed. Epoch budget capped at 500 to keep the suite tractable
    // (the no-boundary run needs a few dozen).
    RunConfig cfg = preset_config("advection-snnd");
    cfg.network.seed = snnd_seed;
    cfg.training.include_boundary_loss = true;
    cfg.training.max_epochs = 500;
    const SolveReport rep = snn_solve(cfg.make_problem(), cfg.make_options());
    r.require(rep.epochs_used > snnd_epochs,
              "boundary-loss ablation epochs " + std::to_string(rep.epochs_used) +
                  " not larger than " + std::to_string(snnd_epochs));
    r.note("ablation epochs " + std::to_string(rep.epochs_used) + " vs " +
           std::to_string(snnd_epochs));
  }
  return r;
}

CheckResult criterion_7() {
  CheckResult r;
  for (const auto& [preset, band] : {std::pair<const char*, double>{"parabolic-snnd", 1e-8},
                                     {"parabolic-snni", 1e-4}}) {
    std::string detail = preset;
    const double t0 = now_seconds();
    const SolveReport rep = best_of_seeds(preset_config(preset), band, &detail);
    const double elapsed = now_seconds() - t0;
    r.require(rep.rel_l2 <= band, detail + " > " + sci(band));
    r.require(elapsed <= 15.0 * 60.0 * 3.0, detail + " runtime");
    r.note(detail);
  }
  return r;
}

CheckResult criterion_8() {
  CheckResult r;
  const std::vector<std::pair<double, double>> table15 = {
      {1, 1}, {1, 10}, {1, 100}, {1, 1e3}, {1, 1e4}, {1, 1e5}, {1, 1e6}};
  const std::vector<std::pair<double, double>> table16 = {
      {1, 1e-6}, {10, 1e-5}, {100, 1e-4}, {1e3, 1e-3}, {1e4, 1e-2}, {1e5, 1e-1}, {1e6, 1}};

  auto run_ratio = [&](Method method, double k1, double k2, double band, std::string* detail) {
    RunConfig cfg = preset_config(method == Method::snn_d ? "anisotropic-snnd"
                                                          : "anisotropic-snni");
    cfg.k1 = k1;
    cfg.k2 = k2;
    return best_of_seeds(cfg, band, detail).rel_l2;
  };

  double dmin = 1e300, dmax = 0.0;
  for (const auto& [k1, k2] : table15) {
    std::string detail = "snn-d " + sci(k1) + ":" + sci(k2);
    const double err = run_ratio(Method::snn_d, k1, k2, 1e-6, &detail);
    r.require(err <= 1e-6, detail + " > 1e-06");
    dmin = std::min(dmin, err);
    dmax = std::max(dmax, err);
    std::string idetail = "snn-i " + sci(k1) + ":" + sci(k2);
    const double ierr = run_ratio(Method::snn_i, k1, k2, 1e-3, &idetail);
    r.require(ierr <= 1e-3, idetail + " > 1e-03");
  }
  r.require(dmax / dmin <= 100.0,
            "snn-d variation " + sci(dmax / dmin) + "x exceeds 2 orders of magnitude");
  r.note("snn-d ratio sweep spread " + sci(dmin) + " .. " + sci(dmax));
  for (const auto& [k1, k2] : table16) {
    std::string detail = "snn-d " + sci(k1) + ":" + sci(k2);
    const double err = run_ratio(Method::snn_d, k1, k2, 1e-6, &detail);
    r.require(err <= 1e-6, detail + " > 1e-06");
    std::string idetail = "snn-i " + sci(k1) + ":" + sci(k2);
    const double ierr = run_ratio(Method::snn_i, k1, k2, 1e-3, &idetail);
    r.require(ierr <= 1e-3, idetail + " > 1e-03");
  }
  return r;
}

// ---------------------------------------------------------------------------
// 9. Degeneracy and structure.

CheckResult criterion_9() {
  CheckResult r;
  // lambda = 0 loss identity, bit exact.
  {
    const PdeProblem prob = helmholtz1d();
    const Params p = init_xavier(MlpConfig{1, {12}, 8, 3});
    DiscreteSamplingSpec small{{60}, {1}};
    const CollocationSet colloc = sample_collocation(prob, small);
    const Coefficients ones = Vector::Ones(8);
    r.require(loss_discrete(p, ones, prob, colloc, true, 0.0) ==
                  loss_discrete(p, ones, prob, colloc, false, 1.0),
              "lambda=0 discrete identity not bit-exact");
    const QuadratureSet quad = quadrature_set(prob, prob.default_integral);
    r.require(loss_integral(p, ones, prob, quad, true, 0.0) ==
                  loss_integral(p, ones, prob, quad, false, 1.0),
              "lambda=0 integral identity not bit-exact");
  }
  // ELM path trains zero epochs.
  {
    SolveOptions opts;
    opts.method = Method::elm;
    opts.network = MlpConfig{1, {}, 60, 1};
    const SolveReport rep = snn_solve(helmholtz1d(), opts);
    r.require(rep.epochs_used == 0, "elm epochs != 0");
    r.require(rep.used_least_squares, "elm skipped least squares");
  }
  // System shapes, normalized rows, and solved-vs-ones residual on every
  // preset's assembled system. A short warm-up stands in for full training:
  // the checks are parameter-independent, but a freshly initialized zero-bias
  // network is odd in its input, so operator rows at an origin grid point
  // vanish identically and assembly (correctly) rejects them.
  struct Expect {
    const char* problem;
    long rows_d;
  };
  for (const auto& [pname, rows_d] : {Expect{"helmholtz1d", 1002},
                                      Expect{"poisson2d", 1152},
                                      Expect{"advection", 10600},
                                      Expect{"parabolic1d", 2650},
                                      Expect{"anisotropic2d", 1152}}) {
    const PdeProblem prob = builtin(pname, 1.0, 1e6);
    const int M = 300;
    const Params init = init_xavier(MlpConfig{prob.domain.dim(), {100, 100, 100, 100}, M, 1});
    const CollocationSet colloc = sample_collocation(prob, prob.default_discrete);
    TrainConfig warmup;
    warmup.max_epochs = 3;
    warmup.epsilon = 1e-12;
    const Params p = train(init, prob, colloc, warmup).params;
    const LinearSystem sys = assemble_snnd(p, prob, colloc);
    r.require(sys.A.rows() == rows_d, std::string(pname) + " snn-d rows");
    r.require(sys.A.cols() == M, std::string(pname) + " snn-d cols");
    double worst = 0.0;
    for (Eigen::Index i = 0; i < sys.A.rows(); ++i)
      worst = std::max(worst, std::abs(sys.A.row(i).cwiseAbs().maxCoeff() - 1.0));
    r.require(worst < 1e-14, std::string(pname) + " snn-d row normalization");
    const OmegaSolve sol = solve_omega(sys);
    r.require(sol.residual_norm <= sol.residual_norm_ones,
              std::string(pname) + " snn-d residual not optimal vs ones");

    const QuadratureSet quad = quadrature_set(prob, prob.default_integral);
    const LinearSystem isys = assemble_snni(p, prob, quad);
    r.require(isys.A.rows() == 2 * M && isys.A.cols() == M,
              std::string(pname) + " snn-i shape not 2MxM");
    worst = 0.0;
    for (Eigen::Index i = 0; i < isys.A.rows(); ++i)
      worst = std::max(worst, std::abs(isys.A.row(i).cwiseAbs().maxCoeff() - 1.0));
    r.require(worst < 1e-14, std::string(pname) + " snn-i row normalization");
    const OmegaSolve isol = solve_omega(isys);
    r.require(isol.residual_norm <= isol.residual_norm_ones,
              std::string(pname) + " snn-i residual not optimal vs ones");
  }
  return r;
}

// ---------------------------------------------------------------------------
// 10. Determinism across process invocations.

CheckResult criterion_10() {
  CheckResult r;
  const char* cli = std::getenv("SNN_CLI_PATH");
  if (!cli) {
    r.require(false, "SNN_CLI_PATH not set");
    return r;
  }
  const auto dir = std::filesystem::temp_directory_path() / "snn_determinism";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string cfg_path = (dir / "case.json").string();
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({
      "problem": "helmholtz1d",
      "method": "snn-d",
      "network": {"hidden_widths": [40, 40], "subspace_dim": 60, "seed": 1},
      "training": {"epsilon": 1e-3, "max_epochs": 60},
      "sampling": {"grid": [200], "condition_points": [1]}
    })";
  }
  // The same invocation, byte for byte, run twice into the same directory.
  const std::string out = (dir / "out").string();
  auto run_once = [&] {
    const std::string cmd = std::string("\"") + cli + "\" run " + cfg_path + " --out-dir " + out +
                            " --loss-history > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  r.require(run_once(), "first CLI invocation failed");
  std::filesystem::rename(out + "/case_report.json", out + "/first_report.json");
  std::filesystem::rename(out + "/case_loss_history.csv", out + "/first_history.csv");
  r.require(run_once(), "second CLI invocation failed");
  if (!r.pass) return r;

  auto load_stripped = [&](const std::string& name) {
    std::ifstream in(out + "/" + name);
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(in);
    doc.erase("timing");
    return doc.dump(2);
  };
  const std::string a = load_stripped("first_report.json");
  const std::string b = load_stripped("case_report.json");
  r.require(!a.empty() && a == b, "reports differ outside the timing block");

  // Loss-history CSVs must be byte-identical outright.
  auto slurp = [&](const std::string& name) {
    std::ifstream in(out + "/" + name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  r.require(slurp("first_history.csv") == slurp("case_loss_history.csv") &&
                !slurp("first_history.csv").empty(),
            "loss histories differ");
  std::filesystem::remove_all(dir);
  return r;
}

// ---------------------------------------------------------------------------
// Baseline smoke: penalized-residual modes run with finite, decreasing loss.

CheckResult baseline_smoke() {
  CheckResult r;
  for (const char* preset : {"helmholtz-pinn", "helmholtz-dgm"}) {
    RunConfig cfg = preset_config(preset);
    cfg.training.max_epochs = 2000;
    cfg.training.epsilon = 1e-9;  // effectively epoch-bound
    const SolveReport rep = snn_solve(cfg.make_problem(), cfg.make_options());
    r.require(std::isfinite(rep.final_loss), std::string(preset) + " loss not finite");
    r.require(rep.final_loss < rep.initial_loss, std::string(preset) + " loss did not decrease");
    r.require(!rep.used_least_squares, std::string(preset) + " ran the least-squares step");
    r.require(rep.trained_omega, std::string(preset) + " did not train omega");
    r.note(std::string(preset) + " loss " + sci(rep.initial_loss) + " -> " + sci(rep.final_loss));
  }
  return r;
}

struct Criterion {
  std::string name;
  std::string label;
  std::function<CheckResult()> run;
};

}  // namespace

int main(int argc, char** argv) {
#ifdef __GLIBC__
  // Keep the per-epoch multi-megabyte temporaries on the heap instead of
  // round-tripping them through mmap.
  mallopt(M_MMAP_MAX, 0);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
  const std::vector<Criterion> criteria = {
      {"1", "derivative oracle (finite differences)", criterion_1},
      {"2", "quadrature exactness", criterion_2},
      {"3", "least-squares optimality and examples", criterion_3},
      {"4", "helmholtz presets", criterion_4},
      {"5", "poisson presets", criterion_5},
      {"6", "advection presets and boundary-loss ablation", criterion_6},
      {"7", "parabolic presets", criterion_7},
      {"8", "anisotropy robustness", criterion_8},
      {"9", "degeneracy and structure", criterion_9},
      {"10", "determinism across invocations", criterion_10},
      {"baseline-smoke", "penalized-residual baseline smoke", baseline_smoke},
  };

  std::vector<std::string> wanted;
  for (int i = 1; i < argc; ++i) wanted.emplace_back(argv[i]);

  bool all_pass = true;
  for (const auto& c : criteria) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), c.name) == wanted.end())
      continue;
    const double t0 = now_seconds();
    CheckResult result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = now_seconds() - t0;
    std::cout << (result.pass ? "PASS" : "FAIL") << "  criterion " << c.name << ": " << c.label
              << " [" << sci(elapsed) << " s]"
              << (result.detail.empty() ? "" : "  -- " + result.detail) << "\n";
    std::cout.flush();
    all_pass = all_pass && result.pass;
  }
  return all_pass ? 0 : 1;
}
