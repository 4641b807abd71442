#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snn/linalg.hpp"

namespace snn {

/// Fully connected network: input (dim d) -> hidden layers -> subspace layer
/// of width M whose outputs are the basis functions. tanh throughout.
struct MlpConfig {
  int input_dim = 1;
  std::vector<int> hidden_widths;  // may be empty (no hidden layers)
  int subspace_dim = 300;
  std::uint64_t seed = 1;

  /// Layer widths including input and subspace layer: d, n_1, ..., n_K, M.
  std::vector<int> layer_widths() const;
  void validate() const;  // throws ConfigError
};

/// All trainable weights and biases. Layer k maps width n_{k-1} -> n_k;
/// the last layer has width subspace_dim.
struct Params {
  std::vector<Matrix> weights;  // weights[k]: n_{k+1} x n_k
  std::vector<Vector> biases;   // biases[k]: n_{k+1}

  int input_dim() const { return static_cast<int>(weights.front().cols()); }
  int subspace_dim() const { return static_cast<int>(weights.back().rows()); }
  int num_layers() const { return static_cast<int>(weights.size()); }
  std::size_t num_entries() const;
  bool all_finite() const;

  /// Same shapes, all entries zero. Used for gradients and Adam moments.
  Params zeros_like() const;
};

/// Subspace coefficients omega (length M).
using Coefficients = Vector;

/// Xavier (Glorot uniform) initialization: W_k entries i.i.d. uniform on
/// +-sqrt(6 / (n_{k-1} + n_k)), biases zero. The random stream is SplitMix64
/// seeded with (seed XOR k) per layer, k = 1-based; see docs/params-schema.
Params init_xavier(const MlpConfig& cfg);

/// ELM-style initialization: all weights and biases i.i.d. uniform on
/// [-range, range]. Same per-layer stream derivation as init_xavier.
Params init_elm(const MlpConfig& cfg, double range);

/// u(x_i) = sum_j omega_j phi_j(x_i) for each column x_i of points (d x n).
Vector eval_solution(const Params& params, const Coefficients& omega, const Matrix& points);

/// Checkpoint schema: {"input_dim", "layer_widths", "layers":[{"rows","cols",
/// "weights" (row-major), "bias"}]}. Documented in the README.
std::string params_to_json(const Params& params);
Params params_from_json(const std::string& text);

/// SplitMix64: the fixed 64-bit generator behind both initializers.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-r, r).
  double symmetric(double r) { return r * (2.0 * uniform() - 1.0); }

 private:
  std::uint64_t state_;
};

}  // namespace snn
