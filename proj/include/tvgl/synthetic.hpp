#pragma once

// Ground-truth time-varying graphs and smooth signals.
//
// The first slot holds a random geometric graph with Gaussian (RBF) weights.
// Other slots are derived along a breadth-first traversal of the temporal
// graph: a child differs from its parent by n = max(1, round(c / gamma))
// rewires, so strongly tied slots stay close. Signals are zero-mean Gaussian
// with covariance L^+ + sigma^2 I.

#include "tvgl/graph_vec.hpp"
#include "tvgl/temporal_graph.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvgl {

struct RbfGraphConfig
{
  int d = 20;
  double kernel_sigma = 0.5;
  double threshold = 0.75;
  std::uint64_t seed = 1;

  void validate() const
  {
    if (d < 2) throw std::invalid_argument("RBF graph needs d >= 2");
    if (!(kernel_sigma > 0.0)) throw std::invalid_argument("kernel_sigma must be positive");
    if (!(threshold >= 0.0 && threshold < 1.0)) throw std::invalid_argument("threshold must lie in [0, 1)");
  }
};

struct EvolutionConfig
{
  double base_changes = 10.0; // c: rewires per unit of inverse temporal weight
  double new_weight_low = 0.75; // weights of added edges ~ U[low, high]
  double new_weight_high = 1.0;
  std::uint64_t seed = 2;

  void validate() const
  {
    if (!(base_changes > 0.0)) throw std::invalid_argument("base_changes must be positive");
    if (!(new_weight_low > 0.0 && new_weight_low <= new_weight_high))
      throw std::invalid_argument("added-edge weight range must be positive and ordered");
  }
};

struct SignalConfig
{
  int num_samples = 100;
  double noise_sigma = 0.1;
  std::uint64_t seed = 3;

  void validate() const
  {
    if (num_samples < 1) throw std::invalid_argument("need at least one sample per slot");
    if (!(noise_sigma >= 0.0)) throw std::invalid_argument("noise_sigma must be non-negative");
  }
};

/// RBF weights for given coordinates (d x 2): exp(-dist^2 / (2 sigma^2)),
/// zeroed at or below the threshold. Vertices left isolated are joined to
/// their nearest neighbour with the unthresholded kernel weight.
inline WeightVector rbf_weights(const Eigen::Ref<const Eigen::MatrixX2d>& coords, double kernel_sigma,
                                double threshold)
{
  const Eigen::Index d = coords.rows();
  if (d < 2) throw std::invalid_argument("rbf_weights: need at least two vertices");
  auto kernel = [&](Eigen::Index i, Eigen::Index j) {
    return std::exp(-(coords.row(i) - coords.row(j)).squaredNorm() / (2.0 * kernel_sigma * kernel_sigma));
  };
  WeightVector w(num_pairs(d));
  for_each_pair(d, [&](Eigen::Index i, Eigen::Index j, Eigen::Index k) {
    const double v = kernel(i, j);
    w[k] = v > threshold ? v : 0.0;
  });

  const Vector deg = degree_operator(w);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (deg[i] > 0.0) continue;
    Eigen::Index best = i == 0 ? 1 : 0;
    for (Eigen::Index j = 0; j < d; ++j)
      if (j != i && (coords.row(i) - coords.row(j)).squaredNorm() < (coords.row(i) - coords.row(best)).squaredNorm())
        best = j;
    const Eigen::Index k = pair_index(std::min(i, best), std::max(i, best), d);
    w[k] = std::max(kernel(i, best), std::numeric_limits<double>::min());
  }
  return w;
}

/// Vertices uniform in the unit square, RBF weights, connectivity repair.
inline WeightVector gen_rbf_graph(const RbfGraphConfig& cfg)
{
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixX2d coords(cfg.d, 2);
  for (int i = 0; i < cfg.d; ++i) {
    coords(i, 0) = unif(rng);
    coords(i, 1) = unif(rng);
  }
  return rbf_weights(coords, cfg.kernel_sigma, cfg.threshold);
}

/// Child graph: n edges of the parent's support removed, n absent pairs added
/// with fresh weights. Removals avoid isolating a vertex when possible. The
/// supports of parent and child differ in exactly 2n entries (n clamped to
/// what the parent allows).
inline WeightVector rewire(const WeightVector& parent, int n, const EvolutionConfig& cfg, std::mt19937_64& rng)
{
  const Eigen::Index d = vertex_count(parent.size());
  std::vector<Eigen::Index> present, absent;
  for (Eigen::Index k = 0; k < parent.size(); ++k) (parent[k] > 0.0 ? present : absent).push_back(k);
  if (present.empty()) throw std::invalid_argument("cannot rewire an empty graph");
  n = std::min<int>({n, int(present.size()), int(absent.size())});

  std::vector<std::pair<Eigen::Index, Eigen::Index>> endpoints(std::size_t(parent.size()));
  for_each_pair(d, [&](Eigen::Index i, Eigen::Index j, Eigen::Index k) { endpoints[std::size_t(k)] = {i, j}; });
  std::vector<int> support_degree(std::size_t(d), 0);
  for (auto k : present) {
    ++support_degree[std::size_t(endpoints[std::size_t(k)].first)];
    ++support_degree[std::size_t(endpoints[std::size_t(k)].second)];
  }

  WeightVector child = parent;
  for (int c = 0; c < n; ++c) {
    std::vector<std::size_t> safe;
    for (std::size_t idx = 0; idx < present.size(); ++idx) {
      const auto [i, j] = endpoints[std::size_t(present[idx])];
      if (support_degree[std::size_t(i)] > 1 && support_degree[std::size_t(j)] > 1) safe.push_back(idx);
    }
    std::size_t pick;
    if (!safe.empty()) {
      pick = safe[std::uniform_int_distribution<std::size_t>(0, safe.size() - 1)(rng)];
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, present.size() - 1)(rng);
    }
    const Eigen::Index k = present[pick];
    child[k] = 0.0;
    --support_degree[std::size_t(endpoints[std::size_t(k)].first)];
    --support_degree[std::size_t(endpoints[std::size_t(k)].second)];
    present.erase(present.begin() + std::ptrdiff_t(pick));
  }

  std::uniform_real_distribution<double> weight(cfg.new_weight_low, cfg.new_weight_high);
  for (int c = 0; c < n; ++c) {
    const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, absent.size() - 1)(rng);
    child[absent[pick]] = weight(rng);
    absent.erase(absent.begin() + std::ptrdiff_t(pick));
  }
  return child;
}

inline int rewire_count(double base_changes, double gamma)
{
  return std::max(1, int(std::lround(base_changes / gamma)));
}

/// One graph per slot. Slot 0 gets g0; every other slot is rewired from its
/// parent in the breadth-first tree of the temporal graph rooted at slot 0.
/// Temporal edges outside that tree do not influence generation.
inline std::vector<WeightVector> evolve_graphs(const WeightVector& g0, const TemporalGraph& graph,
                                               const EvolutionConfig& cfg)
{
  cfg.validate();
  const int T = graph.num_slots();
  std::vector<WeightVector> out(static_cast<std::size_t>(T));
  std::vector<char> seen(static_cast<std::size_t>(T), 0);
  std::mt19937_64 rng(cfg.seed);

  out[0] = g0;
  seen[0] = 1;
  std::queue<int> frontier;
  frontier.push(0);
  while (!frontier.empty()) {
    const int parent = frontier.front();
    frontier.pop();
    for (const auto& inc : graph.incidences(parent)) {
      if (seen[std::size_t(inc.slot)]) continue;
      const double gamma = graph.edges()[inc.column / 2].gamma;
      out[std::size_t(inc.slot)] = rewire(out[std::size_t(parent)], rewire_count(cfg.base_changes, gamma), cfg, rng);
      seen[std::size_t(inc.slot)] = 1;
      frontier.push(inc.slot);
    }
  }
  for (int t = 0; t < T; ++t)
    if (!seen[std::size_t(t)])
      throw std::invalid_argument("temporal graph is not connected: slot " + std::to_string(t) +
                                  " unreachable from slot 0");
  return out;
}

/// d x N matrix of independent samples from N(0, L^+ + sigma^2 I).
inline Matrix gen_smooth_signals(const WeightVector& w, const SignalConfig& cfg)
{
  cfg.validate();
  if (!(w.array() > 0.0).any()) throw std::invalid_argument("cannot sample signals on an empty graph");
  const Matrix L = laplacian(w);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(L);
  const Vector& lambda = eig.eigenvalues();
  const double cutoff = 1e-10 * std::max(1.0, lambda.cwiseAbs().maxCoeff());
  Vector scale(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double pinv = lambda[i] > cutoff ? 1.0 / lambda[i] : 0.0;
    scale[i] = std::sqrt(pinv + cfg.noise_sigma * cfg.noise_sigma);
  }
  const Matrix factor = eig.eigenvectors() * scale.asDiagonal();

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix Zs(L.rows(), cfg.num_samples);
  for (Eigen::Index c = 0; c < Zs.cols(); ++c)
    for (Eigen::Index r = 0; r < Zs.rows(); ++r) Zs(r, c) = normal(rng);
  return factor * Zs;
}

} // namespace tvgl
