#include "snn/network.hpp"

#include <nlohmann/json.hpp>

#include "snn/autodiff.hpp"
#include "snn/errors.hpp"

namespace snn {

std::vector<int> MlpConfig::layer_widths() const {
  std::vector<int> widths;
  widths.reserve(hidden_widths.size() + 2);
  widths.push_back(input_dim);
  widths.insert(widths.end(), hidden_widths.begin(), hidden_widths.end());
  widths.push_back(subspace_dim);
  return widths;
}

void MlpConfig::validate() const {
  if (input_dim < 1) throw ConfigError("MlpConfig: input_dim must be >= 1");
  if (subspace_dim < 1) throw ConfigError("MlpConfig: subspace_dim must be >= 1");
  for (int w : hidden_widths)
    if (w < 1) throw ConfigError("MlpConfig: every hidden width must be >= 1");
}

std::size_t Params::num_entries() const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < weights.size(); ++k)
    n += static_cast<std::size_t>(weights[k].size()) + static_cast<std::size_t>(biases[k].size());
  return n;
}

bool Params::all_finite() const {
  for (std::size_t k = 0; k < weights.size(); ++k)
    if (!weights[k].allFinite() || !biases[k].allFinite()) return false;
  return true;
}

Params Params::zeros_like() const {
  Params z;
  z.weights.reserve(weights.size());
  z.biases.reserve(biases.size());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    z.weights.push_back(Matrix::Zero(weights[k].rows(), weights[k].cols()));
    z.biases.push_back(Vector::Zero(biases[k].size()));
  }
  return z;
}

namespace {

// Per-layer stream: SplitMix64 seeded with (seed XOR k), k = 1-based layer
// index. Weight entries are drawn row-major, then the bias entries.
SplitMix64 layer_stream(std::uint64_t seed, int layer_index_1based) {
  return SplitMix64(seed ^ static_cast<std::uint64_t>(layer_index_1based));
}

}  // namespace

Params init_xavier(const MlpConfig& cfg) {
  cfg.validate();
  const auto widths = cfg.layer_widths();
  Params params;
  for (std::size_t k = 0; k + 1 < widths.size(); ++k) {
    const int fan_in = widths[k], fan_out = widths[k + 1];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    auto rng = layer_stream(cfg.seed, static_cast<int>(k) + 1);
    Matrix w(fan_out, fan_in);
    for (int i = 0; i < fan_out; ++i)
      for (int j = 0; j < fan_in; ++j) w(i, j) = rng.symmetric(bound);
    params.weights.push_back(std::move(w));
    params.biases.push_back(Vector::Zero(fan_out));
  }
  return params;
}

Params init_elm(const MlpConfig& cfg, double range) {
  cfg.validate();
  if (!(range > 0.0)) throw ConfigError("init_elm: range must be > 0");
  const auto widths = cfg.layer_widths();
  Params params;
  for (std::size_t k = 0; k + 1 < widths.size(); ++k) {
    const int fan_in = widths[k], fan_out = widths[k + 1];
    auto rng = layer_stream(cfg.seed, static_cast<int>(k) + 1);
    Matrix w(fan_out, fan_in);
    for (int i = 0; i < fan_out; ++i)
      for (int j = 0; j < fan_in; ++j) w(i, j) = rng.symmetric(range);
    Vector b(fan_out);
    for (int i = 0; i < fan_out; ++i) b[i] = rng.symmetric(range);
    params.weights.push_back(std::move(w));
    params.biases.push_back(std::move(b));
  }
  return params;
}

Vector eval_solution(const Params& params, const Coefficients& omega, const Matrix& points) {
  if (omega.size() != params.subspace_dim())
    throw DimensionError("eval_solution: omega has length " + std::to_string(omega.size()) +
                         " but subspace dimension is " + std::to_string(params.subspace_dim()));
  const BasisEval be = forward_with_input_derivs(params, points, DiffConfig{0});
  return be.phi * omega;
}

std::string params_to_json(const Params& params) {
  nlohmann::ordered_json doc;
  doc["schema"] = "snnpde-params-v1";
  doc["input_dim"] = params.input_dim();
  std::vector<int> widths{params.input_dim()};
  for (const auto& w : params.weights) widths.push_back(static_cast<int>(w.rows()));
  doc["layer_widths"] = widths;
  auto& layers = doc["layers"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < params.weights.size(); ++k) {
    const Matrix& w = params.weights[k];
    nlohmann::ordered_json layer;
    layer["rows"] = w.rows();
    layer["cols"] = w.cols();
    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(w.size()));
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) entries.push_back(w(i, j));
    layer["weights"] = entries;
    layer["bias"] = std::vector<double>(params.biases[k].data(),
                                        params.biases[k].data() + params.biases[k].size());
    layers.push_back(std::move(layer));
  }
  return doc.dump(2) + "\n";
}

Params params_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("params_from_json: ") + e.what());
  }
  if (doc.value("schema", "") != "snnpde-params-v1")
    throw ValidationError("params_from_json: unknown schema");
  Params params;
  for (const auto& layer : doc.at("layers")) {
    const auto rows = layer.at("rows").get<Eigen::Index>();
    const auto cols = layer.at("cols").get<Eigen::Index>();
    const auto entries = layer.at("weights").get<std::vector<double>>();
    const auto bias = layer.at("bias").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(entries.size()) != rows * cols ||
        static_cast<Eigen::Index>(bias.size()) != rows)
      throw ValidationError("params_from_json: layer shape mismatch");
    Matrix w(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) w(i, j) = entries[static_cast<std::size_t>(i * cols + j)];
    params.weights.push_back(std::move(w));
    params.biases.push_back(Eigen::Map<const Vector>(bias.data(), rows));
  }
  if (params.weights.empty()) throw ValidationError("params_from_json: no layers");
  return params;
}

}  // namespace snn
