#pragma once

// Per-slot smoothness objective
//
//   f(w) = 2 r^T w - alpha * sum_i log((Sw)_i) + beta * ||w||^2
//
// and the projected-gradient solver for the proximal subproblem
//
//   g(w) = f(w) + (m_rho / 2) * ||w - theta||^2,   w >= 0.

#include "tvgl/graph_vec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tvgl {

struct ObjectiveParams
{
  double alpha = 2.0; // log-degree weight
  double beta = 0.5;  // sparsity weight

  void validate() const
  {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  }
};

enum class StepRule
{
  Backtracking, // Armijo line search, spectral initial trial step
  Fixed,        // constant step_size, halved only to keep degrees positive
};

struct PgdConfig
{
  StepRule rule = StepRule::Backtracking;
  double step_size = 1e-3; // used by StepRule::Fixed
  int max_iters = 10000;
  double tol = 1e-6; // on ||y_{r+1} - y_r||_inf
  bool record_trace = false;

  void validate() const
  {
    if (!(step_size > 0.0)) throw std::invalid_argument("PGD step size must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("PGD tolerance must be positive");
    if (max_iters < 1) throw std::invalid_argument("PGD max_iters must be positive");
  }
};

struct PgdResult
{
  WeightVector w;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace; // g at every accepted iterate, including the start
};

namespace detail {

inline bool degrees_positive(const Vector& deg) { return (deg.array() > 0.0).all(); }

// With alpha = 0 there is no barrier and zero degrees are admissible.
inline bool in_domain(const Vector& deg, const ObjectiveParams& params)
{
  return params.alpha == 0.0 || degrees_positive(deg);
}

/// g evaluated from precomputed degrees; +inf when any degree is zero.
inline double g_value(const Vector& w, const Vector& deg, const Vector& r, const ObjectiveParams& params,
                      const Vector* theta, double m_rho)
{
  if (!in_domain(deg, params)) return std::numeric_limits<double>::infinity();
  double val = 2.0 * r.dot(w) + params.beta * w.squaredNorm();
  if (params.alpha != 0.0) val -= params.alpha * deg.array().log().sum();
  if (theta && m_rho > 0.0) val += 0.5 * m_rho * (w - *theta).squaredNorm();
  return val;
}

inline Vector g_gradient(const Vector& w, const Vector& deg, const Vector& r, const ObjectiveParams& params,
                         const Vector* theta, double m_rho)
{
  Vector grad = 2.0 * r + 2.0 * params.beta * w;
  if (params.alpha != 0.0) grad -= params.alpha * degree_operator_adjoint(deg.cwiseInverse());
  if (theta && m_rho > 0.0) grad += m_rho * (w - *theta);
  return grad;
}

} // namespace detail

/// Returns +inf when some vertex has zero degree (log barrier).
inline double eval_f(const Eigen::Ref<const Vector>& w, const Eigen::Ref<const Vector>& r,
                     const ObjectiveParams& params)
{
  if (w.size() != r.size()) throw std::invalid_argument("eval_f: w and r lengths differ");
  const Vector wv = w;
  return detail::g_value(wv, degree_operator(wv), r, params, nullptr, 0.0);
}

inline double eval_g(const Eigen::Ref<const Vector>& w, const Eigen::Ref<const Vector>& r,
                     const ObjectiveParams& params, const Eigen::Ref<const Vector>& theta, double m_rho)
{
  if (w.size() != r.size() || w.size() != theta.size())
    throw std::invalid_argument("eval_g: vector lengths differ");
  const Vector wv = w;
  const Vector th = theta;
  return detail::g_value(wv, degree_operator(wv), r, params, &th, m_rho);
}

/// Gradient of g. With m_rho = 0 this is the gradient of f.
/// Throws std::domain_error if any degree is zero.
inline Vector grad_g(const Eigen::Ref<const Vector>& w, const Eigen::Ref<const Vector>& r,
                     const ObjectiveParams& params, const Eigen::Ref<const Vector>& theta, double m_rho)
{
  if (w.size() != r.size() || w.size() != theta.size())
    throw std::invalid_argument("grad_g: vector lengths differ");
  const Vector wv = w;
  const Vector deg = degree_operator(wv);
  if (!detail::in_domain(deg, params)) throw std::domain_error("grad_g: zero vertex degree");
  const Vector th = theta;
  return detail::g_gradient(wv, deg, r, params, &th, m_rho);
}

/// All-ones graph scaled to unit mean degree.
inline WeightVector cold_start(Eigen::Index d)
{
  return WeightVector::Constant(num_pairs(d), 1.0 / double(d - 1));
}

/// Projected gradient descent on g, started from w0 (which must have positive
/// degrees). Every iterate is non-negative and keeps all degrees positive.
/// alpha = 0 is accepted here (plain quadratic, no barrier).
inline PgdResult pgd_solve(const Eigen::Ref<const Vector>& w0, const Eigen::Ref<const Vector>& r,
                           const ObjectiveParams& params, const Eigen::Ref<const Vector>& theta, double m_rho,
                           const PgdConfig& cfg)
{
  if (w0.size() != r.size() || w0.size() != theta.size())
    throw std::invalid_argument("pgd_solve: vector lengths differ");
  if (m_rho < 0.0) throw std::invalid_argument("pgd_solve: m_rho must be non-negative");
  if (params.alpha < 0.0 || params.beta < 0.0) throw std::invalid_argument("pgd_solve: negative alpha or beta");

  constexpr double kArmijo = 1e-4;
  constexpr double kShrink = 0.5;
  constexpr int kMaxBacktracks = 80;

  const Vector rv = r;
  const Vector th = theta;
  const Eigen::Index d = vertex_count(w0.size());

  PgdResult res;
  Vector y = w0.cwiseMax(0.0);
  Vector deg = degree_operator(y);
  if (!detail::in_domain(deg, params)) throw std::domain_error("pgd_solve: start point has a zero degree");

  double gy = detail::g_value(y, deg, rv, params, &th, m_rho);
  Vector grad = detail::g_gradient(y, deg, rv, params, &th, m_rho);
  if (cfg.record_trace) res.trace.push_back(gy);

  Vector y_prev, grad_prev, y_new, deg_new;
  for (int it = 0; it < cfg.max_iters; ++it) {
    // 1/L bound for the current point: L <= 2 beta + m_rho + alpha * max(1/deg^2) * 2d
    const double curvature =
      params.alpha == 0.0 ? 0.0 : params.alpha * deg.cwiseInverse().cwiseAbs2().maxCoeff() * 2.0 * double(d);
    const double eps0 = 1.0 / std::max(2.0 * params.beta + m_rho + curvature, 1e-12);

    double step = cfg.step_size;
    if (cfg.rule == StepRule::Backtracking) {
      step = eps0;
      if (it > 0) {
        const Vector s = y - y_prev;
        const double sy = s.dot(grad - grad_prev);
        if (sy > 0.0) step = std::clamp(s.squaredNorm() / sy, eps0, 1e4 * eps0);
      }
    }

    bool accepted = false;
    double g_new = 0.0;
    for (int bt = 0; bt < kMaxBacktracks; ++bt, step *= kShrink) {
      y_new = (y - step * grad).cwiseMax(0.0);
      deg_new = degree_operator(y_new);
      if (!detail::in_domain(deg_new, params)) continue;
      g_new = detail::g_value(y_new, deg_new, rv, params, &th, m_rho);
      if (cfg.rule == StepRule::Fixed) {
        accepted = true;
        break;
      }
      const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(gy));
      if (g_new <= gy + kArmijo * grad.dot(y_new - y) + slack) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // no representable descent left from y
      res.converged = true;
      break;
    }

    const double change = (y_new - y).lpNorm<Eigen::Infinity>();
    y_prev.swap(y);
    grad_prev.swap(grad);
    y.swap(y_new);
    deg.swap(deg_new);
    gy = g_new;
    grad = detail::g_gradient(y, deg, rv, params, &th, m_rho);
    res.iterations = it + 1;
    if (cfg.record_trace) res.trace.push_back(gy);
    if (change < cfg.tol) {
      res.converged = true;
      break;
    }
  }
  res.w = std::move(y);
  return res;
}

/// Static graph learning for a single slot: argmin_{w >= 0} f(w).
inline PgdResult learn_static(const Eigen::Ref<const Vector>& r, const ObjectiveParams& params,
                              const PgdConfig& cfg = {})
{
  const Eigen::Index d = vertex_count(r.size());
  const Vector w0 = cold_start(d);
  return pgd_solve(w0, r, params, Vector::Zero(r.size()), 0.0, cfg);
}

} // namespace tvgl
