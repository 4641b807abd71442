#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snn/solver.hpp"

namespace snn {

/// One experiment: problem + method + network/training/sampling settings.
/// Defaults are the common experiment settings (4 x 100 tanh hidden layers,
/// subspace dimension 300, epsilon 1e-3, 5000 max epochs, seed 1).
struct RunConfig {
  std::string problem = "helmholtz1d";
  double k1 = 1.0;
  double k2 = 1.0;
  Method method = Method::snn_d;
  MlpConfig network{1, {100, 100, 100, 100}, 300, 1};
  TrainConfig training;
  AdamConfig adam;
  double elm_range = 1.0;
  std::optional<DiscreteSamplingSpec> discrete_sampling;  // empty -> preset
  std::optional<IntegralSamplingSpec> integral_sampling;  // empty -> preset
  std::string out_dir = ".";
  bool write_loss_history = false;

  PdeProblem make_problem() const;
  SolveOptions make_options() const;
};

/// Parse and validate a config document. Parse errors carry line:column;
/// validation errors name the offending field.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
std::string run_config_to_json(const RunConfig& cfg);

struct PresetInfo {
  std::string name;
  std::string description;
};

/// Built-in experiment presets (problem x method).
std::vector<PresetInfo> presets();
bool is_preset(const std::string& name);
RunConfig preset_config(const std::string& name);  // ConfigError on unknown

/// Report/document rendering. The JSON report is byte-deterministic for a
/// fixed config and seed except for the "timing" object.
std::string report_to_json(const SolveReport& report, const RunConfig& cfg);
std::string error_field_csv(const SolveReport& report);
std::string loss_history_csv(const SolveReport& report);

/// Run a config and persist the report (and optional CSVs) under
/// cfg.out_dir using `stem` as the file-name stem. Returns the report and
/// the path of the JSON file written.
std::pair<SolveReport, std::string> run_and_write(const RunConfig& cfg, const std::string& stem);

/// Axis sweep over a base config (Cartesian product, run sequentially).
struct SweepSpec {
  RunConfig base;
  std::vector<int> subspace_dims;                   // axis "M"
  std::vector<int> points_per_dim;                  // axis "points_per_dim"
  std::vector<int> depths;                          // axis "depth"
  std::vector<std::pair<double, double>> ratios;    // axis "ratio" (k1, k2)
  std::vector<Method> methods;                      // axis "method"
};

SweepSpec parse_sweep_spec(const std::string& json_text);
SweepSpec load_sweep_spec(const std::string& path);

/// Execute the sweep, streaming one CSV row per cell to `csv_path` (flushed
/// per cell; failures are recorded in the row and the sweep continues).
/// Returns the number of cells run.
int run_sweep(const SweepSpec& spec, const std::string& csv_path);

/// CSV column order (versioned in the README):
/// method,k1,k2,depth,points_per_dim,M,rel_l2,rel_linf,epochs,stop_reason,status
std::string sweep_csv_header();

}  // namespace snn
