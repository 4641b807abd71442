#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>
#ifdef __GLIBC__
#include <malloc.h>
#endif

#include "snn/config.hpp"
#include "snn/errors.hpp"
#include "snn/version.hpp"

namespace {

// SNN_NUM_THREADS caps Eigen's GEMM parallelism (effective when built with
// OpenMP; runs are single-threaded otherwise).
void apply_thread_env() {
  if (const char* env = std::getenv("SNN_NUM_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) Eigen::setNbThreads(n);
  }
}

// Training allocates multi-megabyte temporaries every epoch; with glibc
// defaults those go through mmap/munmap and the page-fault cost dominates
// sys time. Keep large blocks on the heap for reuse.
void tune_allocator() {
#ifdef __GLIBC__
  mallopt(M_MMAP_MAX, 0);
  mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
}

std::string stem_of(const std::string& config_arg) {
  if (snn::is_preset(config_arg)) return config_arg;
  return std::filesystem::path(config_arg).stem().string();
}

snn::RunConfig load_config_or_preset(const std::string& arg) {
  if (snn::is_preset(arg)) return snn::preset_config(arg);
  return snn::load_run_config(arg);
}

}  // namespace

int main(int argc, char** argv) {
  tune_allocator();
  apply_thread_env();

  CLI::App app{"Neural-network subspace PDE solver (collocation and integral forms)"};
  app.set_version_flag("--version", snn::kVersion);
  app.require_subcommand(1);

  std::string config_arg, sweep_arg, out_dir, params_out;
  bool loss_history = false;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto* run = app.add_subcommand("run", "Run one experiment from a config file or preset name");
  run->add_option("config", config_arg, "Config file path or preset name")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the network seed");
  run->add_option("--out-dir", out_dir, "Output directory (default from config)");
  run->add_flag("--loss-history", loss_history, "Also write <stem>_loss_history.csv");
  run->add_option("--save-params", params_out, "Write the trained network as JSON");

  auto* sweep = app.add_subcommand("sweep", "Run an axis sweep from a sweep-spec file");
  sweep->add_option("spec", sweep_arg, "Sweep spec file path")->required();
  auto* sweep_seed_opt = sweep->add_option("--seed", seed, "Override the network seed");
  sweep->add_option("--out-dir", out_dir, "Output directory (default from base config)");

  auto* list = app.add_subcommand("presets", "List built-in experiment presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  seed_set = seed_opt->count() > 0 || sweep_seed_opt->count() > 0;

  try {
    if (*run) {
      snn::RunConfig cfg = load_config_or_preset(config_arg);
      if (seed_set) cfg.network.seed = seed;
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (loss_history) cfg.write_loss_history = true;
      auto [report, path] = snn::run_and_write(cfg, stem_of(config_arg));
      if (!params_out.empty()) {
        std::ofstream out(params_out, std::ios::binary);
        out << snn::params_to_json(report.trained_params);
      }
      std::cout << "report: " << path << "\n";
      if (report.has_errors)
        std::cout << "rel_l2: " << report.rel_l2 << "  rel_linf: " << report.rel_linf
                  << "  epochs: " << report.epochs_used << "\n";
      return 0;
    }
    if (*sweep) {
      snn::SweepSpec spec = snn::load_sweep_spec(sweep_arg);
      if (seed_set) spec.base.network.seed = seed;
      if (!out_dir.empty()) spec.base.out_dir = out_dir;
      std::filesystem::create_directories(spec.base.out_dir);
      const std::string csv =
          (std::filesystem::path(spec.base.out_dir) / (stem_of(sweep_arg) + ".csv")).string();
      const int cells = snn::run_sweep(spec, csv);
      std::cout << "sweep: " << cells << " cells -> " << csv << "\n";
      return 0;
    }
    if (*list) {
      for (const auto& p : snn::presets()) std::cout << p.name << "  -  " << p.description << "\n";
      return 0;
    }
  } catch (const snn::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
