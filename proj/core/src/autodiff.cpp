#include "snn/autodiff.hpp"

#include <cmath>
#include <string>

#include "snn/errors.hpp"

namespace snn {

namespace {

using Array = Eigen::ArrayXXd;

// tanh via the vectorized exp kernel: 1 - 2/(e^{2x} + 1). Matches std::tanh
// to ~1 ulp and saturates correctly for large |x|.
inline Array fast_tanh(const Array& z) { return 1.0 - 2.0 / ((2.0 * z).exp() + 1.0); }

// Value / first-derivative / second-derivative channels of one layer's
// output, each column one point.
struct Channels {
  Matrix V;
  std::vector<Matrix> D1;
  std::vector<Matrix> D2;
};

// What the reverse pass needs per layer: the activation output and the
// pre-activation derivative channels A_p = W d_prev,p and C_p = W s_prev,p.
struct LayerRecord {
  Matrix V;
  std::vector<Matrix> A;
  std::vector<Matrix> C;
};

struct Tape {
  Channels input;
  std::vector<LayerRecord> layers;
};

void check_points(const Params& params, const Matrix& points) {
  if (points.rows() != params.input_dim())
    throw DimensionError("forward: points have " + std::to_string(points.rows()) +
                         " coordinates but the network input dimension is " +
                         std::to_string(params.input_dim()));
}

Channels input_channels(const Matrix& points, int order) {
  const int d = static_cast<int>(points.rows());
  const Eigen::Index n = points.cols();
  Channels ch;
  ch.V = points;
  if (order >= 1) {
    ch.D1.assign(d, Matrix::Zero(d, n));
    for (int p = 0; p < d; ++p) ch.D1[p].row(p).setOnes();
  }
  if (order >= 2) ch.D2.assign(d, Matrix::Zero(d, n));
  return ch;
}

// Propagate channels through all layers. The tape, when given, records what
// the reverse pass needs.
Channels forward_channels(const Params& params, const Matrix& points, int order,
                          FinalActivation final_act, Tape* tape) {
  check_points(params, points);
  if (order < 0 || order > 2)
    throw ConfigError("DiffConfig: max_input_order must be 0, 1 or 2");
  const int d = static_cast<int>(points.rows());
  const int L = params.num_layers();

  Channels ch = input_channels(points, order);
  if (tape) tape->input = ch;

  for (int k = 0; k < L; ++k) {
    const Matrix& W = params.weights[k];
    const Vector& b = params.biases[k];
    if (W.cols() != ch.V.rows())
      throw DimensionError("forward: layer " + std::to_string(k + 1) + " weight shape mismatch");

    Matrix Z = (W * ch.V).colwise() + b;
    std::vector<Matrix> A(order >= 1 ? d : 0), C(order >= 2 ? d : 0);
    for (int p = 0; p < d && order >= 1; ++p) A[p].noalias() = W * ch.D1[p];
    for (int p = 0; p < d && order >= 2; ++p) C[p].noalias() = W * ch.D2[p];

    const bool linear = (k == L - 1) && final_act == FinalActivation::linear;
    Channels out;
    if (linear) {
      out.V = std::move(Z);
      out.D1 = A;
      out.D2 = C;
    } else {
      out.V = fast_tanh(Z.array()).matrix();
      const Array s1 = 1.0 - out.V.array().square();           // sigma'
      if (order >= 1) {
        const Array s2 = -2.0 * out.V.array() * s1;            // sigma''
        out.D1.resize(d);
        for (int p = 0; p < d; ++p) out.D1[p] = (s1 * A[p].array()).matrix();
        if (order >= 2) {
          out.D2.resize(d);
          for (int p = 0; p < d; ++p)
            out.D2[p] = (s2 * A[p].array().square() + s1 * C[p].array()).matrix();
        }
      }
    }
    if (tape) {
      LayerRecord rec;
      rec.V = out.V;
      rec.A = std::move(A);
      rec.C = std::move(C);
      tape->layers.push_back(std::move(rec));
    }
    ch = std::move(out);
  }
  return ch;
}

// Reverse accumulation through the propagation recursion. Seeds are adjoints
// of the top-layer channels; gradients are accumulated into grad.
void reverse_channels(const Params& params, const Tape& tape, int order,
                      FinalActivation final_act, Matrix Vbar, std::vector<Matrix> D1bar,
                      std::vector<Matrix> D2bar, Params& grad) {
  const int d = static_cast<int>(tape.input.V.rows());
  const int L = params.num_layers();

  for (int k = L - 1; k >= 0; --k) {
    const Matrix& W = params.weights[static_cast<std::size_t>(k)];
    const LayerRecord& rec = tape.layers[static_cast<std::size_t>(k)];
    const Matrix& Vin = (k == 0) ? tape.input.V : tape.layers[static_cast<std::size_t>(k - 1)].V;

    // Adjoints of the pre-activation channels Z, A_p, C_p of this layer.
    Matrix Zbar;
    std::vector<Matrix> Abar(order >= 1 ? d : 0), Cbar(order >= 2 ? d : 0);
    const bool linear = (k == L - 1) && final_act == FinalActivation::linear;
    if (linear) {
      Zbar = std::move(Vbar);
      for (int p = 0; p < d && order >= 1; ++p) Abar[p] = std::move(D1bar[p]);
      for (int p = 0; p < d && order >= 2; ++p) Cbar[p] = std::move(D2bar[p]);
    } else {
      const Array sig = rec.V.array();
      const Array s1 = 1.0 - sig.square();
      Array zb = Vbar.array() * s1;
      if (order >= 1) {
        const Array s2 = -2.0 * sig * s1;
        const Array s3 = -2.0 * (s1.square() + sig * s2);  // d(sigma'')/dz
        for (int p = 0; p < d; ++p) {
          const Array a = rec.A[static_cast<std::size_t>(p)].array();
          const Array d1b = D1bar[static_cast<std::size_t>(p)].array();
          zb += d1b * a * s2;
          Array ab = d1b * s1;
          if (order >= 2) {
            const Array d2b = D2bar[static_cast<std::size_t>(p)].array();
            const Array c = rec.C[static_cast<std::size_t>(p)].array();
            zb += d2b * (a.square() * s3 + c * s2);
            ab += 2.0 * d2b * a * s2;
            Cbar[p] = (d2b * s1).matrix();
          }
          Abar[p] = ab.matrix();
        }
      }
      Zbar = zb.matrix();
    }

    // Parameter gradients. dW picks up one term per channel; the input
    // derivative channels of layer k are reconstructed from the previous
    // record (cheap elementwise work, no extra tape memory).
    Matrix& dW = grad.weights[static_cast<std::size_t>(k)];
    dW.noalias() += Zbar * Vin.transpose();
    grad.biases[static_cast<std::size_t>(k)] += Zbar.rowwise().sum();
    if (order >= 1) {
      if (k == 0) {
        for (int p = 0; p < d; ++p)
          dW.noalias() += Abar[p] * tape.input.D1[static_cast<std::size_t>(p)].transpose();
        // Input second-derivative channels are identically zero.
      } else {
        const LayerRecord& prev = tape.layers[static_cast<std::size_t>(k - 1)];
        const Array s1p = 1.0 - prev.V.array().square();
        const Array s2p = -2.0 * prev.V.array() * s1p;
        for (int p = 0; p < d; ++p) {
          const Array ap = prev.A[static_cast<std::size_t>(p)].array();
          const Matrix d1prev = (s1p * ap).matrix();
          dW.noalias() += Abar[p] * d1prev.transpose();
          if (order >= 2) {
            const Matrix d2prev =
                (s2p * ap.square() + s1p * prev.C[static_cast<std::size_t>(p)].array()).matrix();
            dW.noalias() += Cbar[p] * d2prev.transpose();
          }
        }
      }
    }

    if (k == 0) break;

    // Adjoints of the previous layer's output channels.
    Vbar.noalias() = W.transpose() * Zbar;
    if (order >= 1)
      for (int p = 0; p < d; ++p) D1bar[p].noalias() = W.transpose() * Abar[p];
    if (order >= 2)
      for (int p = 0; p < d; ++p) D2bar[p].noalias() = W.transpose() * Cbar[p];
  }
}

void validate_point_block(const Params& params, const PointTermBlock& blk) {
  const int d = params.input_dim();
  const Eigen::Index n = blk.points.cols();
  if (blk.points.rows() != d)
    throw ConstructionError("loss: point block dimension does not match the network input");
  if (blk.weights.size() != n || blk.target.size() != n)
    throw ConstructionError("loss: point block weights/target length mismatch");
  if (blk.c0.size() != 0 && blk.c0.size() != n)
    throw ConstructionError("loss: c0 coefficient length mismatch");
  auto check_vec = [&](const std::vector<Vector>& c, const char* name) {
    if (c.empty()) return;
    if (static_cast<int>(c.size()) != d)
      throw ConstructionError(std::string("loss: ") + name + " must have one entry per dimension");
    for (const auto& v : c)
      if (v.size() != n) throw ConstructionError(std::string("loss: ") + name + " length mismatch");
  };
  check_vec(blk.c1, "c1");
  check_vec(blk.c2, "c2");
  if (blk.c0.size() == 0 && blk.c1.empty() && blk.c2.empty())
    throw ConstructionError("loss: point block applies no operator term");
}

}  // namespace

BasisEval forward_with_input_derivs(const Params& params, const Matrix& points,
                                    const DiffConfig& cfg, FinalActivation final_act) {
  Channels top = forward_channels(params, points, cfg.max_input_order, final_act, nullptr);
  BasisEval be;
  be.points = points;
  be.phi = top.V.transpose();
  be.dphi.reserve(top.D1.size());
  for (auto& m : top.D1) be.dphi.push_back(m.transpose());
  be.d2phi.reserve(top.D2.size());
  for (auto& m : top.D2) be.d2phi.push_back(m.transpose());
  return be;
}

namespace {

// Shared implementation; when grad == nullptr only the value is computed.
double loss_impl(const Params& params, const LossSpec& spec, Params* grad, Vector* omega_grad) {
  const int M = params.subspace_dim();
  if (spec.omega.size() != M)
    throw ConstructionError("loss: omega has length " + std::to_string(spec.omega.size()) +
                            " but the subspace dimension is " + std::to_string(M));
  if (spec.point_terms.empty() && spec.pair_terms.empty())
    throw ConstructionError("loss: no terms");

  double value = 0.0;
  if (omega_grad && spec.train_omega) *omega_grad = Vector::Zero(M);

  for (const auto& blk : spec.point_terms) {
    validate_point_block(params, blk);
    const int order = blk.max_order();
    const int d = params.input_dim();
    const Eigen::Index n = blk.points.cols();

    Tape tape;
    Channels top = forward_channels(params, blk.points, order, FinalActivation::tanh,
                                    grad ? &tape : nullptr);

    // Residual r_i = sum_p c2_p u_pp + sum_p c1_p u_p + c0 u - target.
    Vector r = -blk.target;
    if (blk.c0.size() != 0) {
      const Eigen::RowVectorXd u_row = spec.omega.transpose() * top.V;
      r += (u_row.transpose().array() * blk.c0.array()).matrix();
    }
    for (int p = 0; p < d && !blk.c1.empty(); ++p) {
      const Eigen::RowVectorXd up = spec.omega.transpose() * top.D1[static_cast<std::size_t>(p)];
      r += (up.transpose().array() * blk.c1[static_cast<std::size_t>(p)].array()).matrix();
    }
    for (int p = 0; p < d && !blk.c2.empty(); ++p) {
      const Eigen::RowVectorXd upp = spec.omega.transpose() * top.D2[static_cast<std::size_t>(p)];
      r += (upp.transpose().array() * blk.c2[static_cast<std::size_t>(p)].array()).matrix();
    }
    value += (blk.weights.array() * r.array().square()).sum();

    if (!grad) continue;
    const Vector rbar = 2.0 * (blk.weights.array() * r.array()).matrix();

    Matrix Vbar = Matrix::Zero(M, n);
    std::vector<Matrix> D1bar(order >= 1 ? d : 0), D2bar(order >= 2 ? d : 0);
    if (blk.c0.size() != 0)
      Vbar.noalias() = spec.omega * (rbar.array() * blk.c0.array()).matrix().transpose();
    for (int p = 0; p < d && order >= 1; ++p) {
      D1bar[p] = Matrix::Zero(M, n);
      if (!blk.c1.empty())
        D1bar[p].noalias() =
            spec.omega * (rbar.array() * blk.c1[static_cast<std::size_t>(p)].array()).matrix().transpose();
    }
    for (int p = 0; p < d && order >= 2; ++p) {
      D2bar[p] = Matrix::Zero(M, n);
      if (!blk.c2.empty())
        D2bar[p].noalias() =
            spec.omega * (rbar.array() * blk.c2[static_cast<std::size_t>(p)].array()).matrix().transpose();
    }

    if (omega_grad && spec.train_omega) {
      if (blk.c0.size() != 0)
        omega_grad->noalias() += top.V * (rbar.array() * blk.c0.array()).matrix();
      for (int p = 0; p < d && !blk.c1.empty(); ++p)
        omega_grad->noalias() += top.D1[static_cast<std::size_t>(p)] *
                                 (rbar.array() * blk.c1[static_cast<std::size_t>(p)].array()).matrix();
      for (int p = 0; p < d && !blk.c2.empty(); ++p)
        omega_grad->noalias() += top.D2[static_cast<std::size_t>(p)] *
                                 (rbar.array() * blk.c2[static_cast<std::size_t>(p)].array()).matrix();
    }

    reverse_channels(params, tape, order, FinalActivation::tanh, std::move(Vbar),
                     std::move(D1bar), std::move(D2bar), *grad);
  }

  for (const auto& blk : spec.pair_terms) {
    if (blk.left.rows() != params.input_dim() || blk.right.rows() != params.input_dim())
      throw ConstructionError("loss: pair block dimension does not match the network input");
    if (blk.left.cols() != blk.right.cols() || blk.weights.size() != blk.left.cols())
      throw ConstructionError("loss: pair block size mismatch");

    Tape tape_l, tape_r;
    Channels top_l = forward_channels(params, blk.left, 0, FinalActivation::tanh,
                                      grad ? &tape_l : nullptr);
    Channels top_r = forward_channels(params, blk.right, 0, FinalActivation::tanh,
                                      grad ? &tape_r : nullptr);
    const Vector r = (spec.omega.transpose() * top_l.V - spec.omega.transpose() * top_r.V).transpose();
    value += (blk.weights.array() * r.array().square()).sum();

    if (!grad) continue;
    const Vector rbar = 2.0 * (blk.weights.array() * r.array()).matrix();
    Matrix Vbar_l = spec.omega * rbar.transpose();
    Matrix Vbar_r = -Vbar_l;
    if (omega_grad && spec.train_omega)
      omega_grad->noalias() += (top_l.V - top_r.V) * rbar;
    reverse_channels(params, tape_l, 0, FinalActivation::tanh, std::move(Vbar_l), {}, {}, *grad);
    reverse_channels(params, tape_r, 0, FinalActivation::tanh, std::move(Vbar_r), {}, {}, *grad);
  }

  return value;
}

}  // namespace

LossGrad loss_and_param_grad(const Params& params, const LossSpec& spec) {
  LossGrad out;
  out.param_grad = params.zeros_like();
  out.value = loss_impl(params, spec, &out.param_grad, &out.omega_grad);
  return out;
}

double loss_value(const Params& params, const LossSpec& spec) {
  return loss_impl(params, spec, nullptr, nullptr);
}

}  // namespace snn
