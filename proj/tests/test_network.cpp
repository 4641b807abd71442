#include <doctest.h>

#include <cmath>
#include <cstring>

#include "snn/autodiff.hpp"
#include "snn/errors.hpp"
#include "snn/network.hpp"

using namespace snn;

namespace {

bool bit_equal(const Params& a, const Params& b) {
  if (a.weights.size() != b.weights.size()) return false;
  for (std::size_t k = 0; k < a.weights.size(); ++k) {
    if (a.weights[k].rows() != b.weights[k].rows() || a.weights[k].cols() != b.weights[k].cols())
      return false;
    if (std::memcmp(a.weights[k].data(), b.weights[k].data(),
                    sizeof(double) * a.weights[k].size()) != 0)
      return false;
    if (std::memcmp(a.biases[k].data(), b.biases[k].data(),
                    sizeof(double) * a.biases[k].size()) != 0)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("init_xavier: support bounds and zero biases") {
  MlpConfig cfg{2, {13, 7}, 5, 42};
  const Params p = init_xavier(cfg);
  const auto widths = cfg.layer_widths();
  REQUIRE(p.num_layers() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const double bound = std::sqrt(6.0 / (widths[k] + widths[k + 1]));
    CHECK(p.weights[k].cwiseAbs().maxCoeff() <= bound);
    CHECK(p.weights[k].cwiseAbs().maxCoeff() > 0.3 * bound);  // actually spread out
    CHECK(p.biases[k].cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("init_xavier: the experiment architecture has the expected shapes") {
  MlpConfig cfg{1, {100, 100, 100, 100}, 300, 1};
  const Params p = init_xavier(cfg);
  REQUIRE(p.num_layers() == 5);
  CHECK(p.weights[0].rows() == 100);
  CHECK(p.weights[0].cols() == 1);
  for (int k = 1; k <= 3; ++k) {
    CHECK(p.weights[k].rows() == 100);
    CHECK(p.weights[k].cols() == 100);
  }
  CHECK(p.weights[4].rows() == 300);
  CHECK(p.weights[4].cols() == 100);
  CHECK(p.subspace_dim() == 300);
  CHECK(p.input_dim() == 1);
}

TEST_CASE("initialization is reproducible from the seed alone") {
  MlpConfig cfg{2, {8, 8}, 6, 777};
  CHECK(bit_equal(init_xavier(cfg), init_xavier(cfg)));
  CHECK(bit_equal(init_elm(MlpConfig{1, {}, 50, 3}, 1.0), init_elm(MlpConfig{1, {}, 50, 3}, 1.0)));
  MlpConfig other = cfg;
  other.seed = 778;
  CHECK(!bit_equal(init_xavier(cfg), init_xavier(other)));
}

TEST_CASE("init_elm: all parameters inside [-range, range]") {
  for (double r : {1.0, 0.5}) {
    MlpConfig cfg{2, {}, 64, 9};
    const Params p = init_elm(cfg, r);
    CHECK(p.weights[0].cwiseAbs().maxCoeff() <= r);
    CHECK(p.biases[0].cwiseAbs().maxCoeff() <= r);
    CHECK(p.biases[0].cwiseAbs().maxCoeff() > 0.0);  // biases are drawn too
    CHECK(p.weights[0].cwiseAbs().maxCoeff() > 0.8 * r);
  }
  CHECK_THROWS_AS(init_elm(MlpConfig{1, {}, 4, 1}, 0.0), ConfigError);
}

TEST_CASE("eval_solution basics") {
  MlpConfig cfg{1, {6}, 4, 5};
  const Params p = init_xavier(cfg);
  Matrix pts(1, 7);
  pts.row(0) = Vector::LinSpaced(7, -1.0, 1.0).transpose();

  SUBCASE("zero coefficients give the zero function") {
    const Vector u = eval_solution(p, Vector::Zero(4), pts);
    CHECK(u.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("scaling: omega = (2) on an M=1 net doubles the basis") {
    MlpConfig cfg1{1, {6}, 1, 5};
    const Params p1 = init_xavier(cfg1);
    const BasisEval be = forward_with_input_derivs(p1, pts, DiffConfig{0});
    const Vector u = eval_solution(p1, Vector::Constant(1, 2.0), pts);
    CHECK((u - 2.0 * be.phi.col(0)).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("unit coefficient vector picks out one basis function exactly") {
    const BasisEval be = forward_with_input_derivs(p, pts, DiffConfig{0});
    for (int j = 0; j < 4; ++j) {
      Vector e = Vector::Zero(4);
      e[j] = 1.0;
      const Vector u = eval_solution(p, e, pts);
      CHECK(std::memcmp(u.data(), Vector(be.phi.col(j)).data(), sizeof(double) * 7) == 0);
    }
  }
  SUBCASE("wrong omega length") {
    CHECK_THROWS_AS(eval_solution(p, Vector::Ones(5), pts), DimensionError);
  }
}

TEST_CASE("eval_solution is linear in omega") {
  MlpConfig cfg{2, {9}, 6, 21};
  const Params p = init_xavier(cfg);
  Matrix pts = Matrix::Random(2, 11);
  SplitMix64 rng(99);
  Vector w1(6), w2(6);
  for (int j = 0; j < 6; ++j) {
    w1[j] = rng.symmetric(2.0);
    w2[j] = rng.symmetric(2.0);
  }
  const double a = 1.7, b = -0.3;
  const Vector lhs = eval_solution(p, a * w1 + b * w2, pts);
  const Vector rhs = a * eval_solution(p, w1, pts) + b * eval_solution(p, w2, pts);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
}

TEST_CASE("params JSON checkpoint round-trips bit-exactly") {
  MlpConfig cfg{2, {5, 4}, 3, 31};
  Params p = init_elm(cfg, 0.8);
  const std::string text = params_to_json(p);
  const Params q = params_from_json(text);
  CHECK(bit_equal(p, q));
  CHECK_THROWS_AS(params_from_json("{ not json"), ValidationError);
  CHECK_THROWS_AS(params_from_json("{\"schema\":\"other\"}"), ValidationError);
}

TEST_CASE("MlpConfig validation") {
  CHECK_THROWS_AS(init_xavier(MlpConfig{0, {4}, 3, 1}), ConfigError);
  CHECK_THROWS_AS(init_xavier(MlpConfig{1, {0}, 3, 1}), ConfigError);
  CHECK_THROWS_AS(init_xavier(MlpConfig{1, {4}, 0, 1}), ConfigError);
}
