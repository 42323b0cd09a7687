#pragma once

// Synthetic datasets and their on-disk layout:
//
//   <dir>/manifest.json        seed, generator settings, temporal graph (1-based)
//   <dir>/truth.csv            one row per slot, p ground-truth weights
//   <dir>/signals_slot_XX.csv  d rows x N columns per slot (XX 1-based)

#include "tvgl/admm.hpp"
#include "tvgl/experiment/config.hpp"
#include "tvgl/experiment/csv.hpp"
#include "tvgl/synthetic.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace tvgl::experiment {

inline std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream)
{
  return splitmix64(splitmix64(base) ^ (stream * 0xd1b54a32d192ed03ULL));
}

/// Seed of repeat r under a run-level base seed.
inline std::uint64_t repeat_seed(std::uint64_t base, int repeat) { return derive_seed(base, 1000 + std::uint64_t(repeat)); }

struct Dataset
{
  std::uint64_t seed = 0;
  TemporalGraph graph;
  std::vector<WeightVector> truth;
  std::vector<Matrix> signals;

  std::vector<SlotData> slots() const
  {
    std::vector<SlotData> out;
    out.reserve(signals.size());
    for (const auto& X : signals) out.push_back(SlotData::from_signals(X));
    return out;
  }
};

inline Dataset generate_dataset(const DatasetConfig& cfg, std::uint64_t seed)
{
  Dataset ds;
  ds.seed = seed;
  ds.graph = cfg.graph;

  RbfGraphConfig rbf = cfg.rbf;
  rbf.seed = derive_seed(seed, 1);
  EvolutionConfig evo = cfg.evolution;
  evo.seed = derive_seed(seed, 2);
  ds.truth = evolve_graphs(gen_rbf_graph(rbf), cfg.graph, evo);

  for (int t = 0; t < cfg.graph.num_slots(); ++t) {
    SignalConfig sig = cfg.signals;
    sig.seed = derive_seed(seed, 100 + std::uint64_t(t));
    ds.signals.push_back(gen_smooth_signals(ds.truth[std::size_t(t)], sig));
  }
  return ds;
}

inline nlohmann::json temporal_graph_json(const TemporalGraph& g)
{
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({e.i + 1, e.j + 1, e.gamma});
  return {{"T", g.num_slots()}, {"edges", edges}};
}

inline TemporalGraph temporal_graph_from_json(const nlohmann::json& j)
{
  std::vector<TemporalEdge> edges;
  for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>() - 1, e.at(1).get<int>() - 1, e.at(2).get<double>()});
  return TemporalGraph::from_edge_list(j.at("T").get<int>(), std::move(edges));
}

inline std::string slot_file_name(int t)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "signals_slot_%02d.csv", t + 1);
  return buf;
}

inline void write_matrix_csv(const std::string& path, const Matrix& M)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) out << (c ? "," : "") << format_double(M(r, c));
    out << '\n';
  }
}

inline Matrix read_matrix_csv(const std::string& path)
{
  const auto rows = read_numeric_csv(path);
  if (rows.empty()) throw std::runtime_error(path + ": no data");
  Matrix M(Eigen::Index(rows.size()), Eigen::Index(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) throw std::runtime_error(path + ": ragged rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c) M(Eigen::Index(r), Eigen::Index(c)) = rows[r][c];
  }
  return M;
}

inline void write_dataset(const Dataset& ds, const DatasetConfig& cfg, const std::string& dir)
{
  std::filesystem::create_directories(dir);
  Matrix truth(Eigen::Index(ds.truth.size()), ds.truth.front().size());
  for (std::size_t t = 0; t < ds.truth.size(); ++t) truth.row(Eigen::Index(t)) = ds.truth[t].transpose();
  write_matrix_csv(dir + "/truth.csv", truth);
  for (std::size_t t = 0; t < ds.signals.size(); ++t) write_matrix_csv(dir + "/" + slot_file_name(int(t)), ds.signals[t]);

  nlohmann::json m;
  m["seed"] = ds.seed;
  m["d"] = vertex_count(ds.truth.front().size());
  m["T"] = ds.graph.num_slots();
  m["samples"] = ds.signals.front().cols();
  m["temporal_graph"] = temporal_graph_json(ds.graph);
  m["rbf"] = {{"kernel_sigma", cfg.rbf.kernel_sigma}, {"threshold", cfg.rbf.threshold}, {"seed", derive_seed(ds.seed, 1)}};
  m["evolution"] = {{"base_changes", cfg.evolution.base_changes},
                    {"new_weight_low", cfg.evolution.new_weight_low},
                    {"new_weight_high", cfg.evolution.new_weight_high},
                    {"seed", derive_seed(ds.seed, 2)}};
  m["signals"] = {{"samples", cfg.signals.num_samples}, {"noise_sigma", cfg.signals.noise_sigma}};
  m["files"] = {{"truth", "truth.csv"}, {"signals", "signals_slot_XX.csv (d rows x N columns, XX = 1-based slot)"}};
  std::ofstream out(dir + "/manifest.json");
  out << m.dump(2) << '\n';
}

inline Dataset read_dataset(const std::string& dir)
{
  std::ifstream in(dir + "/manifest.json");
  if (!in) throw std::runtime_error("cannot open " + dir + "/manifest.json");
  const auto m = nlohmann::json::parse(in);
  Dataset ds;
  ds.seed = m.at("seed").get<std::uint64_t>();
  ds.graph = temporal_graph_from_json(m.at("temporal_graph"));
  const Matrix truth = read_matrix_csv(dir + "/truth.csv");
  if (truth.rows() != ds.graph.num_slots()) throw std::runtime_error(dir + "/truth.csv: slot count mismatch");
  for (Eigen::Index t = 0; t < truth.rows(); ++t) ds.truth.emplace_back(truth.row(t).transpose());
  for (int t = 0; t < ds.graph.num_slots(); ++t) ds.signals.push_back(read_matrix_csv(dir + "/" + slot_file_name(t)));
  return ds;
}

} // namespace tvgl::experiment
