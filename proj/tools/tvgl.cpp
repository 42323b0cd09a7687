// Command-line front end for the experiment layer.
//
//   tvgl run <config>            results.csv + manifest.json
//   tvgl bench <config>          bench.csv
//   tvgl plot-data <csv>         series files next to the input (or --output-dir)
//   tvgl gen-data <config>       dataset directories only
//
// Exit status: 0 ok, 1 config error, 2 runtime error, 3 finished with
// non-converged cells.

#include "tvgl/experiment/config.hpp"
#include "tvgl/experiment/plot_data.hpp"
#include "tvgl/experiment/runner.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum Exit
{
  kOk = 0,
  kConfigError = 1,
  kRuntimeError = 2,
  kNotConverged = 3,
};

} // namespace

int main(int argc, char** argv)
{
  using namespace tvgl::experiment;

  CLI::App app{"Time-varying graph learning with a general temporal graph prior"};
  app.require_subcommand(1);

  std::string config_path, csv_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> output_dir;
  bool quiet = false;

  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Base seed (replaces the config value)");
    sub->add_option("--workers", workers, "Solver worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--output-dir", output_dir, "Output directory");
    sub->add_flag("-q,--quiet", quiet, "Only print errors");
  };

  auto* run = app.add_subcommand("run", "Run every (method, sweep value, repeat) cell");
  run->add_option("config", config_path, "Experiment config (YAML)")->required();
  add_overrides(run);

  auto* bench = app.add_subcommand("bench", "Time chain-structured instances for several T");
  bench->add_option("config", config_path, "Experiment config with a bench section")->required();
  add_overrides(bench);

  auto* gen = app.add_subcommand("gen-data", "Write synthetic datasets without solving");
  gen->add_option("config", config_path, "Experiment config (YAML)")->required();
  add_overrides(gen);

  auto* plot = app.add_subcommand("plot-data", "Aggregate results.csv or bench.csv into series files");
  plot->add_option("results", csv_path, "results.csv or bench.csv")->required();
  plot->add_option("--output-dir", output_dir, "Output directory (default: next to the input)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  std::ostream* log = quiet ? nullptr : &std::cerr;
  try {
    if (plot->parsed()) {
      const std::string dir =
        output_dir ? *output_dir : std::filesystem::absolute(csv_path).parent_path().string();
      std::filesystem::create_directories(dir);
      for (const auto& f : emit_plot_data(csv_path, dir)) std::cout << f << '\n';
      return kOk;
    }

    ExperimentConfig cfg;
    try {
      cfg = load_config(config_path);
      apply_overrides(cfg, {seed, workers, output_dir});
    } catch (const ConfigError& e) {
      std::cerr << config_path << ": " << e.what() << '\n';
      return kConfigError;
    }

    if (gen->parsed()) {
      for (const auto& d : generate_data(cfg)) std::cout << d << '\n';
      return kOk;
    }
    if (bench->parsed()) {
      const auto rows = bench_scaling(cfg, log);
      std::cout << cfg.output_dir << "/bench.csv\n";
      for (const auto& r : rows)
        if (!r.converged) return kNotConverged;
      return kOk;
    }
    const auto summary = run_experiment(cfg, log);
    std::cout << summary.results_path << '\n';
    if (summary.non_converged > 0) {
      std::cerr << summary.non_converged << " cell(s) did not converge\n";
      return kNotConverged;
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
