#pragma once

// Experiment runner: (method x sweep value x repeat) cells, optional beta
// grid search, scaling benchmark. All output is deterministic given the
// config and seed except the wall_time columns.

#include "tvgl/admm.hpp"
#include "tvgl/experiment/config.hpp"
#include "tvgl/experiment/csv.hpp"
#include "tvgl/experiment/dataset.hpp"
#include "tvgl/metrics.hpp"
#include "tvgl/parallel.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tvgl::experiment {

inline const std::vector<std::string> kResultsHeader = {
  "method", "sweep_parameter", "sweep_value", "repeat",     "seed",      "config_hash", "beta",
  "eta",    "mcc_mean",        "rel_err_mean", "iterations", "converged", "wall_time"};

inline const std::vector<std::string> kBenchHeader = {"T", "workers", "repeat", "iterations", "converged",
                                                      "result_digest", "wall_time"};

/// Columns that legitimately differ between identical runs.
inline bool is_timing_column(const std::string& name) { return name == "wall_time"; }

struct Overrides
{
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> output_dir;
};

inline void apply_overrides(ExperimentConfig& cfg, const Overrides& ov)
{
  std::string tag;
  if (ov.seed) {
    cfg.seed = *ov.seed;
    tag += "seed=" + std::to_string(*ov.seed) + ";";
  }
  if (ov.workers) {
    if (*ov.workers < 1) throw ConfigError("--workers must be >= 1");
    for (auto& m : cfg.methods) m.solver.admm.workers = *ov.workers;
    cfg.defaults.admm.workers = *ov.workers;
    if (cfg.bench) cfg.bench->workers = *ov.workers;
    tag += "workers=" + std::to_string(*ov.workers) + ";";
  }
  if (ov.output_dir) cfg.output_dir = *ov.output_dir;
  // worker count does not change results, but it is provenance
  if (!tag.empty()) cfg.hash = hex64(fnv1a(tag, std::stoull(cfg.hash, nullptr, 16)));
}

struct CellResult
{
  std::string method;
  double sweep_value = 0.0;
  int repeat = 0;
  std::uint64_t seed = 0;
  double beta = 0.0;
  double eta = 0.0;
  EvalReport report;
  int iterations = 0;
  bool converged = false;
  double wall_time = 0.0;
};

struct RunSummary
{
  std::vector<CellResult> rows;
  int non_converged = 0;
  std::string results_path;
};

namespace detail {

inline bool sweeps_data(const std::optional<SweepConfig>& s)
{
  return s && (s->parameter == "samples" || s->parameter == "base_changes" || s->parameter == "noise_sigma");
}

inline DatasetConfig dataset_for(const ExperimentConfig& cfg, double sweep_value)
{
  DatasetConfig dc = cfg.dataset;
  if (!cfg.sweep) return dc;
  const auto& p = cfg.sweep->parameter;
  if (p == "samples") dc.signals.num_samples = int(std::lround(sweep_value));
  else if (p == "base_changes") dc.evolution.base_changes = sweep_value;
  else if (p == "noise_sigma") dc.signals.noise_sigma = sweep_value;
  return dc;
}

inline SolverSettings solver_for(const ExperimentConfig& cfg, const MethodConfig& m, double sweep_value)
{
  SolverSettings s = m.solver;
  if (cfg.sweep && m.source != GraphSource::Independent) {
    if (cfg.sweep->parameter == "eta") s.admm.eta = sweep_value;
  }
  if (cfg.sweep && cfg.sweep->parameter == "beta") {
    s.objective.beta = sweep_value;
    s.beta_grid.reset();
  }
  return s;
}

inline TemporalGraph graph_for(const MethodConfig& m, const TemporalGraph& data_graph)
{
  switch (m.source) {
  case GraphSource::Dataset:
    return data_graph;
  case GraphSource::Explicit:
    if (m.graph.num_slots() != data_graph.num_slots())
      throw std::runtime_error("method '" + m.name + "' temporal graph has " + std::to_string(m.graph.num_slots()) +
                               " slots, data has " + std::to_string(data_graph.num_slots()));
    return m.graph;
  case GraphSource::Independent:
    return TemporalGraph::independent(data_graph.num_slots());
  }
  throw std::logic_error("unknown graph source");
}

struct Trial
{
  Solution solution;
  EvalReport report;
  double wall_time = 0.0;
};

inline Trial run_trial(const Dataset& ds, const std::vector<SlotData>& slots, const TemporalGraph& graph,
                       const ObjectiveParams& obj, const AdmmConfig& admm, double edge_threshold)
{
  const auto t0 = std::chrono::steady_clock::now();
  Trial tr;
  tr.solution = solve(slots, graph, obj, admm);
  tr.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  tr.report = evaluate(tr.solution.graphs, ds.truth, edge_threshold);
  return tr;
}

} // namespace detail

/// Runs every cell and writes results.csv and manifest.json to cfg.output_dir.
/// With a beta grid, each (method, sweep value) picks the beta with the best
/// repeat-averaged MCC against the ground truth; rows report that beta.
inline RunSummary run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr)
{
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);

  const std::vector<double> sweep_values = cfg.sweep ? cfg.sweep->values : std::vector<double>{0.0};
  const std::string sweep_name = cfg.sweep ? cfg.sweep->parameter : "none";

  // Datasets are shared by all methods of a (sweep value, repeat).
  std::optional<Dataset> stored;
  if (!cfg.dataset.path.empty()) stored = read_dataset(cfg.dataset.path);
  auto make_dataset = [&](double sv, int repeat) {
    if (stored) return *stored;
    return generate_dataset(detail::dataset_for(cfg, sv), repeat_seed(cfg.seed, repeat));
  };

  struct Job
  {
    std::size_t method;
    std::size_t sweep;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < sweep_values.size(); ++s)
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) jobs.push_back({m, s});

  std::vector<std::vector<CellResult>> job_rows(jobs.size());
  nlohmann::json selection = nlohmann::json::array();
  std::vector<nlohmann::json> job_selection(jobs.size());

  // Data is cached per sweep value so methods see identical inputs.
  std::vector<std::vector<Dataset>> data(sweep_values.size());
  std::vector<std::vector<std::vector<SlotData>>> slot_cache(sweep_values.size());
  for (std::size_t s = 0; s < sweep_values.size(); ++s)
    for (int r = 0; r < cfg.repeats; ++r) {
      data[s].push_back(make_dataset(sweep_values[s], r));
      slot_cache[s].push_back(data[s].back().slots());
    }

  PhaseExecutor cells(cfg.cell_workers);
  cells.parallel_for(jobs.size(), [&](std::size_t j) {
    const auto& m = cfg.methods[jobs[j].method];
    const double sv = sweep_values[jobs[j].sweep];
    const SolverSettings s = detail::solver_for(cfg, m, sv);
    const auto& datasets = data[jobs[j].sweep];
    const auto& slots = slot_cache[jobs[j].sweep];

    std::vector<double> betas = s.beta_grid ? s.beta_grid->values() : std::vector<double>{s.objective.beta};
    double best_mcc = -std::numeric_limits<double>::infinity();
    std::vector<detail::Trial> best;
    double best_beta = betas.front();
    nlohmann::json grid = nlohmann::json::array();
    for (double beta : betas) {
      ObjectiveParams obj = s.objective;
      obj.beta = beta;
      std::vector<detail::Trial> trials;
      double mcc_sum = 0.0;
      for (int r = 0; r < cfg.repeats; ++r) {
        const auto& ds = datasets[std::size_t(r)];
        trials.push_back(detail::run_trial(ds, slots[std::size_t(r)], detail::graph_for(m, ds.graph), obj, s.admm,
                                           cfg.edge_threshold));
        mcc_sum += trials.back().report.mcc_mean;
      }
      const double mean = mcc_sum / cfg.repeats;
      grid.push_back({{"beta", beta}, {"mcc_mean", mean}});
      if (mean > best_mcc) {
        best_mcc = mean;
        best = std::move(trials);
        best_beta = beta;
      }
    }
    job_selection[j] = {{"method", m.name}, {"sweep_value", sv}, {"beta", best_beta}, {"grid", grid}};

    for (int r = 0; r < cfg.repeats; ++r) {
      const auto& tr = best[std::size_t(r)];
      CellResult c;
      c.method = m.name;
      c.sweep_value = sv;
      c.repeat = r;
      c.seed = datasets[std::size_t(r)].seed;
      c.beta = best_beta;
      c.eta = m.source == GraphSource::Independent ? 0.0 : s.admm.eta;
      c.report = tr.report;
      c.iterations = tr.solution.iterations;
      c.converged = tr.solution.converged;
      c.wall_time = tr.wall_time;
      job_rows[j].push_back(std::move(c));
    }
  });

  RunSummary summary;
  CsvTable table;
  table.header = kResultsHeader;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    selection.push_back(job_selection[j]);
    for (auto& c : job_rows[j]) {
      if (!c.converged) ++summary.non_converged;
      table.rows.push_back({c.method, sweep_name, format_short(c.sweep_value), std::to_string(c.repeat),
                            std::to_string(c.seed), cfg.hash, format_short(c.beta), format_short(c.eta),
                            format_double(c.report.mcc_mean), format_double(c.report.rel_err_mean),
                            std::to_string(c.iterations), c.converged ? "1" : "0", format_short(c.wall_time)});
      if (log)
        *log << c.method << " " << sweep_name << "=" << format_short(c.sweep_value) << " repeat " << c.repeat
             << ": mcc " << format_short(c.report.mcc_mean) << " rel_err " << format_short(c.report.rel_err_mean)
             << " iters " << c.iterations << (c.converged ? "" : " (not converged)") << "\n";
      summary.rows.push_back(std::move(c));
    }
  }
  summary.results_path = cfg.output_dir + "/results.csv";
  write_csv(summary.results_path, table);

  nlohmann::json manifest;
  manifest["config_hash"] = cfg.hash;
  manifest["seed"] = cfg.seed;
  manifest["repeats"] = cfg.repeats;
  manifest["sweep"] = {{"parameter", sweep_name}, {"values", sweep_values}};
  manifest["methods"] = nlohmann::json::array();
  for (const auto& m : cfg.methods) manifest["methods"].push_back(m.name);
  manifest["beta_selection"] = selection;
  manifest["dataset_seeds"] = nlohmann::json::array();
  for (int r = 0; r < cfg.repeats; ++r) manifest["dataset_seeds"].push_back(repeat_seed(cfg.seed, r));
  manifest["non_converged_cells"] = summary.non_converged;
  manifest["results"] = "results.csv";
  std::ofstream(cfg.output_dir + "/manifest.json") << manifest.dump(2) << '\n';
  return summary;
}

/// Writes one dataset directory per (sweep value, repeat) under
/// <output_dir>/data. Returns the directories written.
inline std::vector<std::string> generate_data(const ExperimentConfig& cfg)
{
  if (!cfg.dataset.path.empty()) throw ConfigError("gen-data needs a generated dataset, not dataset.path");
  std::vector<std::string> dirs;
  const bool per_value = detail::sweeps_data(cfg.sweep);
  const std::vector<double> values = per_value ? cfg.sweep->values : std::vector<double>{0.0};
  for (std::size_t s = 0; s < values.size(); ++s)
    for (int r = 0; r < cfg.repeats; ++r) {
      const DatasetConfig dc = per_value ? detail::dataset_for(cfg, values[s]) : cfg.dataset;
      const Dataset ds = generate_dataset(dc, repeat_seed(cfg.seed, r));
      std::string dir = cfg.output_dir + "/data/";
      if (per_value) dir += cfg.sweep->parameter + "_" + format_short(values[s]) + "/";
      dir += "repeat_" + std::to_string(r);
      write_dataset(ds, dc, dir);
      dirs.push_back(dir);
    }
  return dirs;
}

/// Digest of the exact bits of every learned weight.
inline std::string solution_digest(const Solution& sol)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& w : sol.graphs)
    h = fnv1a(std::string_view(reinterpret_cast<const char*>(w.data()), std::size_t(w.size()) * sizeof(double)), h);
  return hex64(h);
}

struct BenchRow
{
  int slots = 0;
  int workers = 0;
  int repeat = 0;
  int iterations = 0;
  bool converged = false;
  std::string digest;
  double wall_time = 0.0;
};

/// Chain-structured instances for every T in cfg.bench, each solved with one
/// worker and with min(workers, T) workers. Uses the first method's solver
/// settings (fixed beta, no grid). Writes bench.csv.
inline std::vector<BenchRow> bench_scaling(const ExperimentConfig& cfg, std::ostream* log = nullptr)
{
  if (!cfg.bench) throw ConfigError("field 'bench': required for the bench command");
  std::filesystem::create_directories(cfg.output_dir);
  const SolverSettings s = cfg.methods.front().solver;

  std::vector<BenchRow> rows;
  for (int T : cfg.bench->slot_counts) {
    if (T < 1) throw ConfigError("bench.T_values entries must be >= 1");
    DatasetConfig dc = cfg.dataset;
    dc.graph = TemporalGraph::chain(T, 1.0);
    for (int r = 0; r < cfg.bench->repeats; ++r) {
      const Dataset ds = generate_dataset(dc, repeat_seed(cfg.seed, r));
      const auto slots = ds.slots();
      std::vector<int> counts{1};
      if (std::min(cfg.bench->workers, T) > 1) counts.push_back(std::min(cfg.bench->workers, T));
      for (int w : counts) {
        AdmmConfig admm = s.admm;
        admm.workers = w;
        PhaseExecutor exec(w);
        const auto t0 = std::chrono::steady_clock::now();
        const Solution sol = solve(slots, ds.graph, s.objective, admm, exec);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back({T, w, r, sol.iterations, sol.converged, solution_digest(sol), secs});
        if (log)
          *log << "T=" << T << " workers=" << w << " repeat " << r << ": " << format_short(secs) << " s, "
               << sol.iterations << " iterations\n";
      }
    }
  }

  CsvTable table;
  table.header = kBenchHeader;
  for (const auto& b : rows)
    table.rows.push_back({std::to_string(b.slots), std::to_string(b.workers), std::to_string(b.repeat),
                          std::to_string(b.iterations), b.converged ? "1" : "0", b.digest, format_double(b.wall_time)});
  write_csv(cfg.output_dir + "/bench.csv", table);
  return rows;
}

} // namespace tvgl::experiment
