#pragma once

// Consensus ADMM for time-varying graph learning with a temporal-graph prior:
//
//   min_{w_t >= 0}  sum_t f_t(w_t) + eta * sum_{(i,j) in E} gamma_ij * psi(w_i - w_j)
//
// Each temporal edge (i,j) owns two consensus columns z_ij ~ w_i, z_ji ~ w_j
// and the matching scaled duals. One iteration is three phases, each a set
// of independent work items separated by a barrier:
//
//   W: per slot t, w_t = argmin f_t(w) + (m rho / 2) ||w - theta_t||^2,
//      theta_t = mean over neighbours j of (z_tj - u_tj)
//   Z: per edge, (z_ij, z_ji) = prox of the edge penalty at (u_ij + w_i, u_ji + w_j)
//   U: per edge direction, u_ij += w_i - z_ij

#include "tvgl/graph_vec.hpp"
#include "tvgl/objective.hpp"
#include "tvgl/parallel.hpp"
#include "tvgl/prox.hpp"
#include "tvgl/temporal_graph.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvgl {

/// Observations of one time slot: the d x N signal matrix and its distance vector.
struct SlotData
{
  Matrix X;
  DistanceVector r;

  static SlotData from_signals(Matrix signals)
  {
    SlotData s;
    s.r = pairwise_distances(signals);
    s.X = std::move(signals);
    return s;
  }

  static SlotData from_distances(DistanceVector distances)
  {
    SlotData s;
    s.r = std::move(distances);
    return s;
  }

  Eigen::Index vertices() const { return vertex_count(r.size()); }
};

struct AdmmConfig
{
  double eta = 2.5;
  double rho = 0.5;
  double abs_tol = 1e-3;
  double rel_tol = 1e-3;
  int max_iters = 1000;
  PenaltyKind penalty = PenaltyKind::L1;
  PgdConfig pgd;
  int workers = 1;

  void validate() const
  {
    if (!(eta >= 0.0)) throw std::invalid_argument("eta must be non-negative");
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("ADMM tolerances must be positive");
    if (max_iters < 1) throw std::invalid_argument("ADMM max_iters must be positive");
    if (workers < 1) throw std::invalid_argument("workers must be positive");
    pgd.validate();
  }
};

struct AdmmState
{
  Matrix W; // p x T
  Matrix Z; // p x 2s
  Matrix U; // p x 2s
  int iter = 0;
};

struct Residuals
{
  double primal = 0.0;
  double dual = 0.0;
  double eps_primal = 0.0;
  double eps_dual = 0.0;

  bool converged() const { return primal <= eps_primal && dual <= eps_dual; }
};

struct Solution
{
  std::vector<WeightVector> graphs;
  bool converged = false;
  int iterations = 0;
  int pgd_failures = 0; // inner solves that hit max_iters
  std::vector<Residuals> residual_history;
  std::vector<double> objective_history;
};

/// Joint objective sum_t f_t(w_t) + eta sum gamma psi(w_i - w_j) at W (p x T).
inline double joint_objective(const Eigen::Ref<const Matrix>& W, const std::vector<SlotData>& slots,
                              const TemporalGraph& graph, const ObjectiveParams& params, double eta,
                              PenaltyKind penalty)
{
  double total = 0.0;
  for (int t = 0; t < graph.num_slots(); ++t) total += eval_f(W.col(t), slots[t].r, params);
  for (const auto& e : graph.edges()) {
    const auto diff = W.col(e.i) - W.col(e.j);
    const double psi = penalty == PenaltyKind::L1 ? diff.lpNorm<1>() : diff.squaredNorm();
    total += eta * e.gamma * psi;
  }
  return total;
}

namespace admm {

inline void check_inputs(const std::vector<SlotData>& slots, const TemporalGraph& graph)
{
  if (slots.empty()) throw std::invalid_argument("no time slots given");
  if (slots.size() != std::size_t(graph.num_slots()))
    throw std::invalid_argument("temporal graph has " + std::to_string(graph.num_slots()) + " slots but " +
                                std::to_string(slots.size()) + " data slots were given");
  const Eigen::Index p = slots.front().r.size();
  vertex_count(p);
  for (const auto& s : slots)
    if (s.r.size() != p) throw std::invalid_argument("time slots have different vertex counts");
}

/// Cold start: unit-mean-degree complete graph in every slot, Z copies W, U = 0.
inline AdmmState init_state(const std::vector<SlotData>& slots, const TemporalGraph& graph)
{
  check_inputs(slots, graph);
  const Eigen::Index p = slots.front().r.size();
  const Eigen::Index d = vertex_count(p);
  AdmmState st;
  st.W = cold_start(d).replicate(1, graph.num_slots());
  st.Z.resize(p, Eigen::Index(2 * graph.num_edges()));
  for (std::size_t n = 0; n < graph.num_edges(); ++n) {
    st.Z.col(Eigen::Index(2 * n)) = st.W.col(graph.edges()[n].i);
    st.Z.col(Eigen::Index(2 * n + 1)) = st.W.col(graph.edges()[n].j);
  }
  st.U = Matrix::Zero(p, st.Z.cols());
  return st;
}

/// Proximal center theta_t and its weight m * rho.
inline std::pair<Vector, double> proximal_center(const AdmmState& st, const TemporalGraph& graph, int t,
                                                 double rho)
{
  const auto& inc = graph.incidences(t);
  Vector theta = Vector::Zero(st.W.rows());
  if (inc.empty()) return {theta, 0.0};
  for (const auto& e : inc) theta += st.Z.col(Eigen::Index(e.column)) - st.U.col(Eigen::Index(e.column));
  theta /= double(inc.size());
  return {theta, double(inc.size()) * rho};
}

/// Returns the number of slots whose inner solve did not converge.
inline int w_phase(AdmmState& st, const std::vector<SlotData>& slots, const TemporalGraph& graph,
                   const ObjectiveParams& params, const AdmmConfig& cfg, PhaseExecutor& exec)
{
  std::vector<char> failed(std::size_t(graph.num_slots()), 0);
  exec.parallel_for(std::size_t(graph.num_slots()), [&](std::size_t k) {
    const int t = int(k);
    const auto [theta, m_rho] = proximal_center(st, graph, t, cfg.rho);
    PgdResult res = pgd_solve(st.W.col(t), slots[k].r, params, theta, m_rho, cfg.pgd);
    st.W.col(t) = res.w;
    failed[k] = res.converged ? 0 : 1;
  });
  int count = 0;
  for (char f : failed) count += f;
  return count;
}

inline void z_phase(AdmmState& st, const TemporalGraph& graph, const AdmmConfig& cfg, PhaseExecutor& exec)
{
  exec.parallel_for(graph.num_edges(), [&](std::size_t n) {
    const auto& e = graph.edges()[n];
    const auto ci = Eigen::Index(2 * n);
    const auto cj = Eigen::Index(2 * n + 1);
    const Vector a = st.U.col(ci) + st.W.col(e.i);
    const Vector b = st.U.col(cj) + st.W.col(e.j);
    auto [zi, zj] = prox_edge({cfg.penalty, cfg.eta * e.gamma}, cfg.rho, a, b);
    st.Z.col(ci) = zi;
    st.Z.col(cj) = zj;
  });
}

inline void u_phase(AdmmState& st, const TemporalGraph& graph, PhaseExecutor& exec)
{
  exec.parallel_for(2 * graph.num_edges(), [&](std::size_t c) {
    const auto& e = graph.edges()[c / 2];
    const int owner = (c % 2 == 0) ? e.i : e.j;
    st.U.col(Eigen::Index(c)) += st.W.col(owner) - st.Z.col(Eigen::Index(c));
  });
}

/// Primal residual ||w_i - z_ij|| over all edge directions, dual residual
/// rho ||Z - Z_prev||, with combined absolute/relative thresholds.
inline Residuals residuals(const Eigen::Ref<const Matrix>& Z_prev, const AdmmState& st, const TemporalGraph& graph,
                           const AdmmConfig& cfg)
{
  const double p = double(st.W.rows());
  const double T = double(st.W.cols());
  const double cols = double(st.Z.cols());

  double primal_sq = 0.0;
  double w_stacked_sq = 0.0;
  for (std::size_t c = 0; c < std::size_t(st.Z.cols()); ++c) {
    const auto& e = graph.edges()[c / 2];
    const int owner = (c % 2 == 0) ? e.i : e.j;
    primal_sq += (st.W.col(owner) - st.Z.col(Eigen::Index(c))).squaredNorm();
    w_stacked_sq += st.W.col(owner).squaredNorm();
  }
  double dual_u_sq = 0.0;
  for (int t = 0; t < graph.num_slots(); ++t) {
    Vector acc = Vector::Zero(st.U.rows());
    for (const auto& inc : graph.incidences(t)) acc += st.U.col(Eigen::Index(inc.column));
    dual_u_sq += acc.squaredNorm();
  }

  Residuals res;
  res.primal = std::sqrt(primal_sq);
  res.dual = cfg.rho * (st.Z - Z_prev).norm();
  res.eps_primal = std::sqrt(cols * p) * cfg.abs_tol + cfg.rel_tol * std::max(std::sqrt(w_stacked_sq), st.Z.norm());
  res.eps_dual = std::sqrt(p * T) * cfg.abs_tol + cfg.rel_tol * cfg.rho * std::sqrt(dual_u_sq);
  return res;
}

} // namespace admm

/// Runs ADMM to convergence or cfg.max_iters on a caller-owned executor. On
/// non-convergence the last iterate is returned with converged = false.
inline Solution solve(const std::vector<SlotData>& slots, const TemporalGraph& graph, const ObjectiveParams& params,
                      const AdmmConfig& cfg, PhaseExecutor& exec)
{
  params.validate();
  cfg.validate();
  AdmmState st = admm::init_state(slots, graph);

  Solution sol;
  Matrix Z_prev;
  for (st.iter = 1; st.iter <= cfg.max_iters; ++st.iter) {
    Z_prev = st.Z;
    sol.pgd_failures += admm::w_phase(st, slots, graph, params, cfg, exec);
    admm::z_phase(st, graph, cfg, exec);
    admm::u_phase(st, graph, exec);

    const Residuals res = admm::residuals(Z_prev, st, graph, cfg);
    sol.residual_history.push_back(res);
    sol.objective_history.push_back(joint_objective(st.W, slots, graph, params, cfg.eta, cfg.penalty));
    sol.iterations = st.iter;
    if (res.converged()) {
      sol.converged = true;
      break;
    }
  }

  sol.graphs.reserve(std::size_t(st.W.cols()));
  for (Eigen::Index t = 0; t < st.W.cols(); ++t) sol.graphs.emplace_back(st.W.col(t));
  return sol;
}

inline Solution solve(const std::vector<SlotData>& slots, const TemporalGraph& graph, const ObjectiveParams& params,
                      const AdmmConfig& cfg)
{
  PhaseExecutor exec(std::min(cfg.workers, graph.num_slots()));
  return solve(slots, graph, params, cfg, exec);
}

} // namespace tvgl
