#pragma once

// Proximal operators for the consensus-variable update of one temporal edge.
//
// For an edge with local copies (z_ij, z_ji) and targets a = u_ij + w_i,
// b = u_ji + w_j the update minimizes
//
//   penalty(z_ij - z_ji) + 1/2 ||a - z_ij||^2 + 1/2 ||b - z_ji||^2.
//
// Writing z_ij, z_ji through their sum and difference decouples the problem:
// the sum is pinned to a + b, and the difference d = z_ji - z_ij solves a
// one-variable prox on b - a with doubled weight.

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>

namespace tvgl {

enum class PenaltyKind
{
  L1,        // eta * gamma * ||w_i - w_j||_1
  SquaredL2, // eta * gamma * ||w_i - w_j||_2^2  (Tikhonov baseline)
};

struct EdgePenalty
{
  PenaltyKind kind = PenaltyKind::L1;
  double weight = 1.0; // eta * gamma
};

inline Eigen::VectorXd soft_threshold(const Eigen::Ref<const Eigen::VectorXd>& v, double lambda)
{
  if (lambda < 0.0) throw std::invalid_argument("soft_threshold: negative threshold");
  return v.unaryExpr([lambda](double x) {
    if (x > lambda) return x - lambda;
    if (x < -lambda) return x + lambda;
    return 0.0;
  });
}

using ZPair = std::pair<Eigen::VectorXd, Eigen::VectorXd>;

/// Minimizer of (kappa/2) ||z_ij - z_ji||_1 + 1/2 ||a - z_ij||^2 + 1/2 ||b - z_ji||^2.
/// In the ADMM update kappa = 2 eta gamma / rho.
inline ZPair prox_pair_l1(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b,
                          double kappa)
{
  if (a.size() != b.size()) throw std::invalid_argument("prox_pair_l1: length mismatch");
  if (kappa < 0.0) throw std::invalid_argument("prox_pair_l1: negative kappa");
  const Eigen::VectorXd mean = 0.5 * (a + b);
  const Eigen::VectorXd half_diff = 0.5 * soft_threshold(b - a, kappa);
  return {mean - half_diff, mean + half_diff};
}

/// Minimizer of kappa ||z_ij - z_ji||_2^2 + 1/2 ||a - z_ij||^2 + 1/2 ||b - z_ji||^2.
/// In the ADMM update kappa = eta gamma / rho.
inline ZPair prox_pair_sql2(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b,
                            double kappa)
{
  if (a.size() != b.size()) throw std::invalid_argument("prox_pair_sql2: length mismatch");
  if (kappa < 0.0) throw std::invalid_argument("prox_pair_sql2: negative kappa");
  const double c = 2.0 * kappa / (1.0 + 4.0 * kappa);
  const Eigen::VectorXd shift = c * (a - b);
  return {a - shift, b + shift};
}

/// Edge update for a given penalty and ADMM parameter rho.
inline ZPair prox_edge(const EdgePenalty& penalty, double rho, const Eigen::Ref<const Eigen::VectorXd>& a,
                       const Eigen::Ref<const Eigen::VectorXd>& b)
{
  switch (penalty.kind) {
  case PenaltyKind::L1:
    return prox_pair_l1(a, b, 2.0 * penalty.weight / rho);
  case PenaltyKind::SquaredL2:
    return prox_pair_sql2(a, b, penalty.weight / rho);
  }
  throw std::logic_error("unknown penalty kind");
}

} // namespace tvgl
