#pragma once

// Experiment configuration (YAML). See configs/fig3_sample_size.yaml for an
// annotated example. Slot indices in config files are 1-based.

#include "tvgl/admm.hpp"
#include "tvgl/experiment/csv.hpp"
#include "tvgl/synthetic.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvgl::experiment {

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct BetaGrid
{
  double min = 0.01;
  double max = 10.0;
  int points = 10;

  std::vector<double> values() const
  {
    std::vector<double> out;
    if (points == 1) return {min};
    for (int k = 0; k < points; ++k)
      out.push_back(min * std::pow(max / min, double(k) / double(points - 1)));
    return out;
  }
};

struct SolverSettings
{
  ObjectiveParams objective;
  AdmmConfig admm;
  std::optional<BetaGrid> beta_grid;
};

enum class GraphSource
{
  Dataset,     // same temporal graph that generated the data
  Explicit,    // given in the method entry
  Independent, // no temporal edges (static learning)
};

struct MethodConfig
{
  std::string name;
  GraphSource source = GraphSource::Dataset;
  TemporalGraph graph; // when source == Explicit
  SolverSettings solver;
};

struct DatasetConfig
{
  RbfGraphConfig rbf;
  EvolutionConfig evolution;
  SignalConfig signals;
  TemporalGraph graph;
  std::string path; // non-empty: load a stored dataset instead of generating
};

struct SweepConfig
{
  std::string parameter; // samples | eta | beta | base_changes | noise_sigma
  std::vector<double> values;
};

struct BenchConfig
{
  std::vector<int> slot_counts{4, 8, 16};
  int workers = 8;
  int repeats = 1;
};

struct ExperimentConfig
{
  std::uint64_t seed = 1;
  int repeats = 1;
  int cell_workers = 1;
  std::string output_dir = "results";
  double edge_threshold = 1e-4;
  DatasetConfig dataset;
  SolverSettings defaults;
  std::vector<MethodConfig> methods;
  std::optional<SweepConfig> sweep;
  std::optional<BenchConfig> bench;
  std::string hash; // of the config text plus command-line overrides
};

namespace detail {

inline std::string where(const YAML::Node& node)
{
  const auto m = node.Mark();
  if (m.line < 0) return "";
  return "line " + std::to_string(m.line + 1) + ", column " + std::to_string(m.column + 1) + ": ";
}

[[noreturn]] inline void fail(const YAML::Node& node, const std::string& field, const std::string& msg)
{
  throw ConfigError(where(node) + "field '" + field + "': " + msg);
}

inline void check_keys(const YAML::Node& map, const std::string& path, const std::set<std::string>& allowed)
{
  if (!map.IsMap()) fail(map, path, "expected a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(kv.first, path.empty() ? key : path + "." + key, "unknown key");
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& field)
{
  if (!node.IsScalar()) fail(node, field, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, field, "cannot parse value '" + node.Scalar() + "'");
  }
}

template <typename T>
void read(const YAML::Node& map, const char* key, const std::string& path, T& out)
{
  if (const auto n = map[key]) out = scalar<T>(n, path.empty() ? key : path + "." + key);
}

template <typename Pred>
void require(const YAML::Node& map, const char* key, const std::string& path, Pred ok, const char* msg)
{
  if (const auto n = map[key]; n && !ok()) fail(n, path + "." + key, msg);
}

/// { T: int, edges: [[i, j, gamma], ...] } | { chain: { T: int, gamma: real } }, 1-based slots.
inline TemporalGraph parse_temporal_graph(const YAML::Node& node, const std::string& path)
{
  if (!node.IsMap()) fail(node, path, "expected a temporal graph mapping");
  if (const auto chain = node["chain"]) {
    check_keys(node, path, {"chain"});
    check_keys(chain, path + ".chain", {"T", "gamma"});
    if (!chain["T"]) fail(chain, path + ".chain.T", "required");
    const int T = scalar<int>(chain["T"], path + ".chain.T");
    double gamma = 1.0;
    read(chain, "gamma", path + ".chain", gamma);
    if (T < 1) fail(chain["T"], path + ".chain.T", "must be >= 1");
    if (!(gamma > 0.0)) fail(chain["gamma"], path + ".chain.gamma", "must be positive");
    return TemporalGraph::chain(T, gamma);
  }
  check_keys(node, path, {"T", "edges"});
  if (!node["T"]) fail(node, path + ".T", "required");
  const int T = scalar<int>(node["T"], path + ".T");
  if (T < 1) fail(node["T"], path + ".T", "must be >= 1");
  std::vector<TemporalEdge> edges;
  if (const auto list = node["edges"]) {
    if (!list.IsSequence()) fail(list, path + ".edges", "expected a list of [i, j, gamma]");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const auto e = list[k];
      const std::string ep = path + ".edges[" + std::to_string(k) + "]";
      if (!e.IsSequence() || (e.size() != 2 && e.size() != 3)) fail(e, ep, "expected [i, j] or [i, j, gamma]");
      TemporalEdge te{scalar<int>(e[0], ep) - 1, scalar<int>(e[1], ep) - 1, e.size() == 3 ? scalar<double>(e[2], ep) : 1.0};
      if (te.i < 0 || te.i >= T || te.j < 0 || te.j >= T) fail(e, ep, "slot index outside 1..T");
      if (te.i == te.j) fail(e, ep, "self-relation");
      if (!(te.gamma > 0.0)) fail(e, ep, "gamma must be positive");
      edges.push_back(te);
    }
  }
  try {
    return TemporalGraph::from_edge_list(T, std::move(edges));
  } catch (const std::exception& ex) {
    fail(node, path, ex.what());
  }
}

inline PenaltyKind parse_penalty(const YAML::Node& node, const std::string& path)
{
  const auto s = scalar<std::string>(node, path);
  if (s == "l1") return PenaltyKind::L1;
  if (s == "squared_l2" || s == "tikhonov") return PenaltyKind::SquaredL2;
  fail(node, path, "expected 'l1' or 'squared_l2'");
}

inline const std::set<std::string> kSolverKeys = {"alpha",     "beta",    "beta_grid", "eta",  "rho",
                                                  "abs_tol",   "rel_tol", "max_iters", "pgd",  "workers",
                                                  "penalty"};

inline void parse_solver(const YAML::Node& node, const std::string& path, SolverSettings& s)
{
  read(node, "alpha", path, s.objective.alpha);
  read(node, "beta", path, s.objective.beta);
  read(node, "eta", path, s.admm.eta);
  read(node, "rho", path, s.admm.rho);
  read(node, "abs_tol", path, s.admm.abs_tol);
  read(node, "rel_tol", path, s.admm.rel_tol);
  read(node, "max_iters", path, s.admm.max_iters);
  read(node, "workers", path, s.admm.workers);
  if (const auto p = node["penalty"]) s.admm.penalty = parse_penalty(p, path + ".penalty");
  if (const auto g = node["beta_grid"]) {
    if (g.IsScalar() && g.Scalar() == "none") {
      s.beta_grid.reset();
    } else {
      check_keys(g, path + ".beta_grid", {"min", "max", "points"});
      BetaGrid grid;
      read(g, "min", path + ".beta_grid", grid.min);
      read(g, "max", path + ".beta_grid", grid.max);
      read(g, "points", path + ".beta_grid", grid.points);
      if (!(grid.min > 0.0 && grid.max >= grid.min) || grid.points < 1)
        fail(g, path + ".beta_grid", "need 0 < min <= max and points >= 1");
      s.beta_grid = grid;
    }
  }
  if (const auto pgd = node["pgd"]) {
    check_keys(pgd, path + ".pgd", {"step_rule", "step_size", "max_iters", "tol"});
    read(pgd, "step_size", path + ".pgd", s.admm.pgd.step_size);
    read(pgd, "max_iters", path + ".pgd", s.admm.pgd.max_iters);
    read(pgd, "tol", path + ".pgd", s.admm.pgd.tol);
    if (const auto r = pgd["step_rule"]) {
      const auto rule = scalar<std::string>(r, path + ".pgd.step_rule");
      if (rule == "backtracking") s.admm.pgd.rule = StepRule::Backtracking;
      else if (rule == "fixed") s.admm.pgd.rule = StepRule::Fixed;
      else fail(r, path + ".pgd.step_rule", "expected 'backtracking' or 'fixed'");
    }
  }
  try {
    s.objective.validate();
    s.admm.validate();
  } catch (const std::invalid_argument& ex) {
    fail(node, path, ex.what());
  }
}

} // namespace detail

inline ExperimentConfig parse_config(const std::string& text)
{
  using namespace detail;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& ex) {
    throw ConfigError("line " + std::to_string(ex.mark.line + 1) + ": YAML syntax error: " + ex.msg);
  }
  if (!root || !root.IsMap()) throw ConfigError("config must be a YAML mapping");
  check_keys(root, "", {"seed", "repeats", "cell_workers", "output_dir", "edge_threshold", "dataset", "solver",
                        "methods", "sweep", "bench"});

  ExperimentConfig cfg;
  read(root, "seed", "", cfg.seed);
  read(root, "repeats", "", cfg.repeats);
  read(root, "cell_workers", "", cfg.cell_workers);
  read(root, "output_dir", "", cfg.output_dir);
  read(root, "edge_threshold", "", cfg.edge_threshold);
  if (cfg.repeats < 1) fail(root["repeats"], "repeats", "must be >= 1");
  if (cfg.cell_workers < 1) fail(root["cell_workers"], "cell_workers", "must be >= 1");
  if (cfg.edge_threshold < 0.0) fail(root["edge_threshold"], "edge_threshold", "must be >= 0");

  const auto ds = root["dataset"];
  if (!ds) throw ConfigError("field 'dataset': required");
  check_keys(ds, "dataset", {"d", "rbf", "evolution", "signals", "temporal_graph", "path"});
  auto& dc = cfg.dataset;
  read(ds, "d", "dataset", dc.rbf.d);
  read(ds, "path", "dataset", dc.path);
  if (const auto rbf = ds["rbf"]) {
    check_keys(rbf, "dataset.rbf", {"kernel_sigma", "threshold"});
    read(rbf, "kernel_sigma", "dataset.rbf", dc.rbf.kernel_sigma);
    read(rbf, "threshold", "dataset.rbf", dc.rbf.threshold);
  }
  if (const auto ev = ds["evolution"]) {
    check_keys(ev, "dataset.evolution", {"base_changes", "new_weight_low", "new_weight_high"});
    read(ev, "base_changes", "dataset.evolution", dc.evolution.base_changes);
    read(ev, "new_weight_low", "dataset.evolution", dc.evolution.new_weight_low);
    read(ev, "new_weight_high", "dataset.evolution", dc.evolution.new_weight_high);
  }
  if (const auto sg = ds["signals"]) {
    check_keys(sg, "dataset.signals", {"samples", "noise_sigma"});
    read(sg, "samples", "dataset.signals", dc.signals.num_samples);
    read(sg, "noise_sigma", "dataset.signals", dc.signals.noise_sigma);
  }
  try {
    dc.rbf.validate();
    dc.evolution.validate();
    dc.signals.validate();
  } catch (const std::invalid_argument& ex) {
    fail(ds, "dataset", ex.what());
  }
  if (const auto tg = ds["temporal_graph"]) dc.graph = parse_temporal_graph(tg, "dataset.temporal_graph");
  else if (dc.path.empty()) fail(ds, "dataset.temporal_graph", "required unless dataset.path is given");

  if (const auto sv = root["solver"]) {
    check_keys(sv, "solver", kSolverKeys);
    parse_solver(sv, "solver", cfg.defaults);
  }

  const auto ms = root["methods"];
  if (!ms || !ms.IsSequence() || ms.size() == 0) fail(ms ? ms : root, "methods", "need a non-empty list");
  std::set<std::string> names;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const auto m = ms[k];
    const std::string path = "methods[" + std::to_string(k) + "]";
    auto keys = kSolverKeys;
    keys.insert({"name", "static", "temporal_graph"});
    check_keys(m, path, keys);
    MethodConfig mc;
    mc.solver = cfg.defaults;
    if (!m["name"]) fail(m, path + ".name", "required");
    mc.name = scalar<std::string>(m["name"], path + ".name");
    if (mc.name.empty() || mc.name.find_first_of(",\"\n") != std::string::npos)
      fail(m["name"], path + ".name", "must be non-empty without commas or quotes");
    if (!names.insert(mc.name).second) fail(m["name"], path + ".name", "duplicate method name");
    parse_solver(m, path, mc.solver);
    bool is_static = false;
    read(m, "static", path, is_static);
    if (is_static) {
      if (m["temporal_graph"]) fail(m["temporal_graph"], path + ".temporal_graph", "static methods take no temporal graph");
      mc.source = GraphSource::Independent;
      mc.solver.admm.eta = 0.0;
    } else if (const auto tg = m["temporal_graph"]) {
      if (tg.IsScalar() && tg.Scalar() == "dataset") mc.source = GraphSource::Dataset;
      else if (tg.IsScalar() && tg.Scalar() == "independent") mc.source = GraphSource::Independent;
      else {
        mc.source = GraphSource::Explicit;
        mc.graph = parse_temporal_graph(tg, path + ".temporal_graph");
      }
    }
    cfg.methods.push_back(std::move(mc));
  }

  if (const auto sw = root["sweep"]) {
    check_keys(sw, "sweep", {"parameter", "values"});
    SweepConfig sc;
    if (!sw["parameter"]) fail(sw, "sweep.parameter", "required");
    sc.parameter = scalar<std::string>(sw["parameter"], "sweep.parameter");
    static const std::set<std::string> known = {"samples", "eta", "beta", "base_changes", "noise_sigma"};
    if (!known.count(sc.parameter))
      fail(sw["parameter"], "sweep.parameter", "expected one of samples, eta, beta, base_changes, noise_sigma");
    const auto vals = sw["values"];
    if (!vals || !vals.IsSequence() || vals.size() == 0) fail(vals ? vals : sw, "sweep.values", "need a non-empty list");
    for (std::size_t k = 0; k < vals.size(); ++k) sc.values.push_back(scalar<double>(vals[k], "sweep.values"));
    if (!dc.path.empty() && (sc.parameter == "samples" || sc.parameter == "base_changes" || sc.parameter == "noise_sigma"))
      fail(sw["parameter"], "sweep.parameter", "cannot sweep a data-generation parameter over a stored dataset");
    cfg.sweep = std::move(sc);
  }

  if (const auto b = root["bench"]) {
    check_keys(b, "bench", {"T_values", "workers", "repeats"});
    BenchConfig bc;
    if (const auto tv = b["T_values"]) {
      if (!tv.IsSequence() || tv.size() == 0) fail(tv, "bench.T_values", "need a non-empty list");
      bc.slot_counts.clear();
      for (std::size_t k = 0; k < tv.size(); ++k) bc.slot_counts.push_back(scalar<int>(tv[k], "bench.T_values"));
    }
    read(b, "workers", "bench", bc.workers);
    read(b, "repeats", "bench", bc.repeats);
    if (bc.workers < 1 || bc.repeats < 1) fail(b, "bench", "workers and repeats must be >= 1");
    cfg.bench = bc;
  }

  cfg.hash = hex64(fnv1a(text));
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

} // namespace tvgl::experiment
