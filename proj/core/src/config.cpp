#include "snn/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "snn/errors.hpp"

namespace snn {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << content;
}

// nlohmann reports byte offsets; convert to line:column for the message.
std::string location_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("config parse error at " + location_of(text, e.byte) + ": " + e.what());
  }
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!known.count(key))
      throw ValidationError("unknown field '" + where + key + "'");
  }
}

DiscreteSamplingSpec parse_discrete_sampling(const json& s) {
  DiscreteSamplingSpec spec;
  spec.interior_counts = s.at("grid").get<std::vector<int>>();
  if (s.contains("condition_points"))
    spec.group_counts = s.at("condition_points").get<std::vector<int>>();
  return spec;
}

IntegralSamplingSpec parse_integral_sampling(const json& s) {
  IntegralSamplingSpec spec;
  spec.interior_subintervals = s.at("quad_subintervals").get<std::vector<int>>();
  spec.interior_points = s.value("quad_points", 1);
  if (s.contains("condition_rules"))
    for (const auto& r : s.at("condition_rules"))
      spec.group_rules.push_back({r.at(0).get<int>(), r.at(1).get<int>()});
  return spec;
}

}  // namespace

PdeProblem RunConfig::make_problem() const { return builtin(problem, k1, k2); }

SolveOptions RunConfig::make_options() const {
  SolveOptions opts;
  opts.method = method;
  opts.network = network;
  opts.training = training;
  opts.adam = adam;
  opts.elm_range = elm_range;
  if (discrete_sampling) opts.discrete_sampling = *discrete_sampling;
  if (integral_sampling) opts.integral_sampling = *integral_sampling;
  return opts;
}

RunConfig parse_run_config(const std::string& json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object()) throw ValidationError("config root must be an object");
  reject_unknown_keys(doc, {"problem", "method", "network", "training", "adam", "elm_range",
                            "sampling", "output"},
                      "");

  RunConfig cfg;
  if (doc.contains("problem")) {
    const json& p = doc.at("problem");
    if (p.is_string()) {
      cfg.problem = p.get<std::string>();
    } else {
      reject_unknown_keys(p, {"name", "k1", "k2"}, "problem.");
      cfg.problem = p.at("name").get<std::string>();
      cfg.k1 = p.value("k1", 1.0);
      cfg.k2 = p.value("k2", 1.0);
    }
  }
  if (doc.contains("method")) cfg.method = method_from_name(doc.at("method").get<std::string>());

  if (doc.contains("network")) {
    const json& n = doc.at("network");
    reject_unknown_keys(n, {"hidden_widths", "subspace_dim", "seed"}, "network.");
    if (n.contains("hidden_widths"))
      cfg.network.hidden_widths = n.at("hidden_widths").get<std::vector<int>>();
    cfg.network.subspace_dim = n.value("subspace_dim", cfg.network.subspace_dim);
    cfg.network.seed = n.value("seed", cfg.network.seed);
  }
  if (doc.contains("training")) {
    const json& t = doc.at("training");
    reject_unknown_keys(
        t, {"epsilon", "max_epochs", "include_boundary_loss", "penalty"}, "training.");
    cfg.training.epsilon = t.value("epsilon", cfg.training.epsilon);
    cfg.training.max_epochs = t.value("max_epochs", cfg.training.max_epochs);
    cfg.training.include_boundary_loss =
        t.value("include_boundary_loss", cfg.training.include_boundary_loss);
    cfg.training.penalty = t.value("penalty", cfg.training.penalty);
  }
  if (doc.contains("adam")) {
    const json& a = doc.at("adam");
    reject_unknown_keys(a, {"lr", "beta1", "beta2", "eps"}, "adam.");
    cfg.adam.lr = a.value("lr", cfg.adam.lr);
    cfg.adam.beta1 = a.value("beta1", cfg.adam.beta1);
    cfg.adam.beta2 = a.value("beta2", cfg.adam.beta2);
    cfg.adam.eps = a.value("eps", cfg.adam.eps);
  }
  cfg.elm_range = doc.value("elm_range", cfg.elm_range);

  const bool integral_method =
      cfg.method == Method::snn_i || cfg.method == Method::dgm_baseline;
  if (doc.contains("sampling")) {
    const json& s = doc.at("sampling");
    reject_unknown_keys(
        s, {"grid", "condition_points", "quad_subintervals", "quad_points", "condition_rules"},
        "sampling.");
    if (s.contains("grid")) cfg.discrete_sampling = parse_discrete_sampling(s);
    if (s.contains("quad_subintervals")) cfg.integral_sampling = parse_integral_sampling(s);
    if (integral_method && !cfg.integral_sampling)
      throw ValidationError(
          "method '" + method_name(cfg.method) +
          "' needs quadrature parameters: field 'sampling.quad_subintervals' is missing");
    if (!integral_method && cfg.method != Method::elm && !cfg.discrete_sampling &&
        !s.empty() && !s.contains("grid"))
      throw ValidationError("field 'sampling.grid' is missing for method '" +
                            method_name(cfg.method) + "'");
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    reject_unknown_keys(o, {"dir", "loss_history"}, "output.");
    cfg.out_dir = o.value("dir", cfg.out_dir);
    cfg.write_loss_history = o.value("loss_history", cfg.write_loss_history);
  }

  // Surface bad values now rather than deep inside a run.
  cfg.network.validate();
  cfg.training.validate();
  if (cfg.method == Method::elm && !cfg.network.hidden_widths.empty())
    throw ValidationError("method 'elm' requires 'network.hidden_widths' to be empty");
  cfg.make_problem();
  return cfg;
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(read_file(path)); }

std::string run_config_to_json(const RunConfig& cfg) {
  ordered_json doc;
  doc["problem"] = {{"name", cfg.problem}, {"k1", cfg.k1}, {"k2", cfg.k2}};
  doc["method"] = method_name(cfg.method);
  doc["network"] = {{"hidden_widths", cfg.network.hidden_widths},
                    {"subspace_dim", cfg.network.subspace_dim},
                    {"seed", cfg.network.seed}};
  doc["training"] = {{"epsilon", cfg.training.epsilon},
                     {"max_epochs", cfg.training.max_epochs},
                     {"include_boundary_loss", cfg.training.include_boundary_loss},
                     {"penalty", cfg.training.penalty}};
  doc["adam"] = {{"lr", cfg.adam.lr},
                 {"beta1", cfg.adam.beta1},
                 {"beta2", cfg.adam.beta2},
                 {"eps", cfg.adam.eps}};
  doc["elm_range"] = cfg.elm_range;
  ordered_json sampling = ordered_json::object();
  if (cfg.discrete_sampling) {
    sampling["grid"] = cfg.discrete_sampling->interior_counts;
    sampling["condition_points"] = cfg.discrete_sampling->group_counts;
  }
  if (cfg.integral_sampling) {
    sampling["quad_subintervals"] = cfg.integral_sampling->interior_subintervals;
    sampling["quad_points"] = cfg.integral_sampling->interior_points;
    ordered_json rules = ordered_json::array();
    for (const auto& r : cfg.integral_sampling->group_rules) rules.push_back({r[0], r[1]});
    sampling["condition_rules"] = rules;
  }
  if (!sampling.empty()) doc["sampling"] = sampling;
  doc["output"] = {{"dir", cfg.out_dir}, {"loss_history", cfg.write_loss_history}};
  return doc.dump(2) + "\n";
}

namespace {

struct PresetDef {
  const char* name;
  const char* problem;
  Method method;
  double k1, k2;
  const char* description;
};

const PresetDef kPresets[] = {
    {"helmholtz-snnd", "helmholtz1d", Method::snn_d, 1, 1,
     "1D Helmholtz, collocation form (1000 uniform points)"},
    {"helmholtz-snni", "helmholtz1d", Method::snn_i, 1, 1,
     "1D Helmholtz, integral form (30 x 10 Gauss-Legendre)"},
    {"helmholtz-elm", "helmholtz1d", Method::elm, 1, 1,
     "1D Helmholtz, random-basis baseline (no hidden layers, no training)"},
    {"helmholtz-pinn", "helmholtz1d", Method::pinn_baseline, 1, 1,
     "1D Helmholtz, penalized-residual baseline (no least squares)"},
    {"helmholtz-dgm", "helmholtz1d", Method::dgm_baseline, 1, 1,
     "1D Helmholtz, integral penalized-residual baseline"},
    {"poisson-snnd", "poisson2d", Method::snn_d, 1, 1,
     "2D Poisson, collocation form (32 x 32 grid, 128 boundary points)"},
    {"poisson-snni", "poisson2d", Method::snn_i, 1, 1,
     "2D Poisson, integral form (8 x 8 subintervals, 4 points each)"},
    {"poisson-elm", "poisson2d", Method::elm, 1, 1,
     "2D Poisson, random-basis baseline"},
    {"advection-snnd", "advection", Method::snn_d, 1, 1,
     "Advection (period-in-x, space-time), collocation form (100 x 100 grid)"},
    {"advection-snni", "advection", Method::snn_i, 1, 1,
     "Advection, integral form (10 x 10 subintervals, 10 points each)"},
    {"parabolic-snnd", "parabolic1d", Method::snn_d, 1, 1,
     "1D heat equation in space-time, collocation form (50 x 50 grid)"},
    {"parabolic-snni", "parabolic1d", Method::snn_i, 1, 1,
     "1D heat equation, integral form (10 x 10 subintervals, 5 points each)"},
    {"anisotropic-snnd", "anisotropic2d", Method::snn_d, 1, 1e6,
     "Anisotropic diffusion at ratio 1:1e6, collocation form"},
    {"anisotropic-snni", "anisotropic2d", Method::snn_i, 1, 1e6,
     "Anisotropic diffusion at ratio 1:1e6, integral form"},
};

}  // namespace

std::vector<PresetInfo> presets() {
  std::vector<PresetInfo> out;
  for (const auto& p : kPresets) out.push_back({p.name, p.description});
  return out;
}

bool is_preset(const std::string& name) {
  for (const auto& p : kPresets)
    if (name == p.name) return true;
  return false;
}

RunConfig preset_config(const std::string& name) {
  for (const auto& p : kPresets) {
    if (name != p.name) continue;
    RunConfig cfg;
    cfg.problem = p.problem;
    cfg.method = p.method;
    cfg.k1 = p.k1;
    cfg.k2 = p.k2;
    if (p.method == Method::elm) cfg.network.hidden_widths.clear();
    return cfg;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

namespace {

// Deterministic float rendering (shortest round-trip via nlohmann).
ordered_json json_number(double v) { return ordered_json(v); }

}  // namespace

std::string report_to_json(const SolveReport& report, const RunConfig& cfg) {
  ordered_json doc;
  doc["schema"] = "snnpde-report-v1";
  doc["method"] = report.method;
  doc["problem"] = report.problem;
  doc["omega_dim"] = report.omega.size();
  doc["epochs_used"] = report.epochs_used;
  doc["stop_reason"] = report.stop_reason;
  doc["initial_loss"] = json_number(report.initial_loss);
  doc["final_loss"] = json_number(report.final_loss);
  doc["final_loss_ratio"] = json_number(report.final_loss_ratio);
  if (report.has_errors) {
    doc["rel_l2"] = json_number(report.rel_l2);
    doc["rel_linf"] = json_number(report.rel_linf);
    doc["error_form"] = report.error_form;
    doc["n_eval_points"] = report.n_eval_points;
  }
  doc["system"] = {{"rows", report.system_rows},
                   {"cols", report.system_cols},
                   {"residual_norm", json_number(report.residual_norm)},
                   {"residual_norm_ones", json_number(report.residual_norm_ones)},
                   {"used_least_squares", report.used_least_squares},
                   {"trained_omega", report.trained_omega}};
  doc["omega"] = std::vector<double>(report.omega.data(), report.omega.data() + report.omega.size());
  doc["config"] = ordered_json::parse(run_config_to_json(cfg));
  doc["timing"] = {{"train_seconds", report.train_seconds},
                   {"assemble_seconds", report.assemble_seconds},
                   {"solve_seconds", report.solve_seconds},
                   {"total_seconds", report.total_seconds}};
  return doc.dump(2) + "\n";
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string error_field_csv(const SolveReport& report) {
  std::ostringstream out;
  const int d = static_cast<int>(report.eval_points.rows());
  out << (d == 1 ? "x" : "x,y") << ",u_exact,u_approx,abs_error\n";
  for (Eigen::Index i = 0; i < report.eval_points.cols(); ++i) {
    out << format_double(report.eval_points(0, i));
    if (d == 2) out << ',' << format_double(report.eval_points(1, i));
    out << ',' << format_double(report.u_exact[i]) << ',' << format_double(report.u_approx[i])
        << ',' << format_double(std::abs(report.u_approx[i] - report.u_exact[i])) << '\n';
  }
  return out.str();
}

std::string loss_history_csv(const SolveReport& report) {
  std::ostringstream out;
  out << "epoch,loss,ratio\n";
  for (std::size_t i = 0; i < report.loss_history.size(); ++i) {
    const double ratio =
        report.initial_loss > 0.0 ? report.loss_history[i] / report.initial_loss : 0.0;
    out << (i + 1) << ',' << format_double(report.loss_history[i]) << ','
        << format_double(ratio) << '\n';
  }
  return out.str();
}

std::pair<SolveReport, std::string> run_and_write(const RunConfig& cfg, const std::string& stem) {
  const PdeProblem problem = cfg.make_problem();
  const SolveReport report = snn_solve(problem, cfg.make_options());

  std::filesystem::create_directories(cfg.out_dir);
  const std::string base = (std::filesystem::path(cfg.out_dir) / stem).string();
  const std::string report_path = base + "_report.json";
  write_file(report_path, report_to_json(report, cfg));
  if (report.has_errors) write_file(base + "_error_field.csv", error_field_csv(report));
  if (cfg.write_loss_history) write_file(base + "_loss_history.csv", loss_history_csv(report));
  return {report, report_path};
}

SweepSpec parse_sweep_spec(const std::string& json_text) {
  const json doc = parse_document(json_text);
  reject_unknown_keys(doc, {"base", "axes"}, "");
  SweepSpec spec;
  if (doc.contains("base")) spec.base = parse_run_config(doc.at("base").dump());
  if (!doc.contains("axes")) throw ValidationError("sweep spec needs an 'axes' object");
  const json& axes = doc.at("axes");
  reject_unknown_keys(axes, {"M", "points_per_dim", "depth", "ratio", "method"}, "axes.");
  if (axes.empty()) throw ValidationError("sweep spec: 'axes' must not be empty");
  auto non_empty = [](const json& a, const char* name) {
    if (!a.is_array() || a.empty())
      throw ValidationError(std::string("sweep axis '") + name + "' must be a non-empty array");
  };
  if (axes.contains("M")) {
    non_empty(axes.at("M"), "M");
    spec.subspace_dims = axes.at("M").get<std::vector<int>>();
  }
  if (axes.contains("points_per_dim")) {
    non_empty(axes.at("points_per_dim"), "points_per_dim");
    spec.points_per_dim = axes.at("points_per_dim").get<std::vector<int>>();
  }
  if (axes.contains("depth")) {
    non_empty(axes.at("depth"), "depth");
    spec.depths = axes.at("depth").get<std::vector<int>>();
  }
  if (axes.contains("ratio")) {
    non_empty(axes.at("ratio"), "ratio");
    for (const auto& r : axes.at("ratio"))
      spec.ratios.emplace_back(r.at(0).get<double>(), r.at(1).get<double>());
  }
  if (axes.contains("method")) {
    non_empty(axes.at("method"), "method");
    for (const auto& m : axes.at("method"))
      spec.methods.push_back(method_from_name(m.get<std::string>()));
  }
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) { return parse_sweep_spec(read_file(path)); }

std::string sweep_csv_header() {
  return "method,k1,k2,depth,points_per_dim,M,rel_l2,rel_linf,epochs,stop_reason,status";
}

namespace {

// Apply a per-dimension point count to a config: interior grid counts for
// the discrete form, per-dim quad point totals (subintervals x points) for
// the integral form. Whole-boundary Dirichlet groups follow the per-dim
// count; other groups keep their preset counts.
void apply_points_per_dim(RunConfig& cfg, int v) {
  const PdeProblem prob = cfg.make_problem();
  const int d = prob.domain.dim();
  const bool integral_method =
      cfg.method == Method::snn_i || cfg.method == Method::dgm_baseline;
  if (!integral_method) {
    DiscreteSamplingSpec spec =
        cfg.discrete_sampling ? *cfg.discrete_sampling : prob.default_discrete;
    spec.interior_counts.assign(static_cast<std::size_t>(d), v);
    for (std::size_t g = 0; g < prob.conditions.size(); ++g) {
      if (prob.conditions[g].kind == ConditionKind::dirichlet_trace &&
          prob.conditions[g].faces.size() == 4)
        spec.group_counts[g] = v;
    }
    cfg.discrete_sampling = spec;
  } else {
    IntegralSamplingSpec spec =
        cfg.integral_sampling ? *cfg.integral_sampling : prob.default_integral;
    const int q = spec.interior_points;
    if (v % q != 0)
      throw ValidationError("points_per_dim " + std::to_string(v) +
                            " is not divisible by quad_points " + std::to_string(q));
    spec.interior_subintervals.assign(static_cast<std::size_t>(d), v / q);
    for (std::size_t g = 0; g < prob.conditions.size(); ++g) {
      if (prob.conditions[g].kind == ConditionKind::dirichlet_trace &&
          prob.conditions[g].faces.size() == 4)
        spec.group_rules[g] = {v / q, q};
    }
    cfg.integral_sampling = spec;
  }
}

void apply_depth(RunConfig& cfg, int depth) {
  if (depth < 0) throw ValidationError("sweep axis 'depth' must be non-negative");
  const int width = cfg.network.hidden_widths.empty() ? 100 : cfg.network.hidden_widths.front();
  cfg.network.hidden_widths.assign(static_cast<std::size_t>(depth), width);
}

}  // namespace

int run_sweep(const SweepSpec& spec, const std::string& csv_path) {
  // Absent axes run once with the base value; fixed iteration order:
  // method, ratio, depth, points, M (innermost).
  const std::vector<Method> methods =
      spec.methods.empty() ? std::vector<Method>{spec.base.method} : spec.methods;
  const std::vector<std::pair<double, double>> ratios =
      spec.ratios.empty() ? std::vector<std::pair<double, double>>{{spec.base.k1, spec.base.k2}}
                          : spec.ratios;
  const std::vector<int> depths =
      spec.depths.empty()
          ? std::vector<int>{static_cast<int>(spec.base.network.hidden_widths.size())}
          : spec.depths;
  const std::vector<int> points = spec.points_per_dim.empty() ? std::vector<int>{0}
                                                              : spec.points_per_dim;
  const std::vector<int> dims =
      spec.subspace_dims.empty() ? std::vector<int>{spec.base.network.subspace_dim}
                                 : spec.subspace_dims;

  std::ofstream out(csv_path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + csv_path + "'");
  out << sweep_csv_header() << '\n';

  int cells = 0;
  for (Method method : methods)
    for (const auto& [k1, k2] : ratios)
      for (int depth : depths)
        for (int pts : points)
          for (int M : dims) {
            RunConfig cfg = spec.base;
            cfg.method = method;
            cfg.k1 = k1;
            cfg.k2 = k2;
            cfg.network.subspace_dim = M;
            if (!spec.depths.empty()) apply_depth(cfg, depth);
            if (method == Method::elm) cfg.network.hidden_widths.clear();
            out << method_name(method) << ',' << format_double(k1) << ',' << format_double(k2)
                << ',' << cfg.network.hidden_widths.size() << ',' << pts << ',' << M << ',';
            try {
              if (pts > 0) apply_points_per_dim(cfg, pts);
              const SolveReport report = snn_solve(cfg.make_problem(), cfg.make_options());
              out << format_double(report.rel_l2) << ',' << format_double(report.rel_linf) << ','
                  << report.epochs_used << ',' << report.stop_reason << ",ok\n";
            } catch (const std::exception& e) {
              std::string msg = e.what();
              for (char& c : msg)
                if (c == ',' || c == '\n') c = ' ';
              out << ",,,," << "error: " << msg << '\n';
            }
            out.flush();
            ++cells;
          }
  return cells;
}

}  // namespace snn
