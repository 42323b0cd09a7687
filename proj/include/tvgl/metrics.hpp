#pragma once

#include "tvgl/graph_vec.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tvgl {

/// Learned weights at or below this are treated as absent edges.
inline constexpr double kDefaultEdgeThreshold = 1e-4;

struct Confusion
{
  double tp = 0, tn = 0, fp = 0, fn = 0;
};

inline Confusion confusion(const Eigen::Ref<const Vector>& w_est, const Eigen::Ref<const Vector>& w_true,
                           double threshold)
{
  if (w_est.size() != w_true.size()) throw std::invalid_argument("confusion: length mismatch");
  if (threshold < 0.0) throw std::invalid_argument("confusion: negative threshold");
  Confusion c;
  for (Eigen::Index k = 0; k < w_est.size(); ++k) {
    const bool est = w_est[k] > threshold;
    const bool truth = w_true[k] > threshold;
    if (est && truth) c.tp += 1;
    else if (!est && !truth) c.tn += 1;
    else if (est) c.fp += 1;
    else c.fn += 1;
  }
  return c;
}

/// Matthews correlation coefficient of the binarized supports. Returns 0 when
/// any marginal is empty.
inline double mcc(const Eigen::Ref<const Vector>& w_est, const Eigen::Ref<const Vector>& w_true,
                  double threshold = kDefaultEdgeThreshold)
{
  const Confusion c = confusion(w_est, w_true, threshold);
  const double denom = (c.tp + c.fp) * (c.tp + c.fn) * (c.tn + c.fp) * (c.tn + c.fn);
  if (denom == 0.0) return 0.0;
  return (c.tp * c.tn - c.fp * c.fn) / std::sqrt(denom);
}

/// ||A_est - A_true||_F / ||A_true||_F, computed on weight vectors (both norms
/// carry the same factor sqrt(2), which cancels).
inline double relative_error(const Eigen::Ref<const Vector>& w_est, const Eigen::Ref<const Vector>& w_true)
{
  if (w_est.size() != w_true.size()) throw std::invalid_argument("relative_error: length mismatch");
  const double ref = w_true.norm();
  if (ref == 0.0) throw std::invalid_argument("relative_error: ground truth is the empty graph");
  return (w_est - w_true).norm() / ref;
}

struct EvalReport
{
  std::vector<double> mcc_per_slot;
  std::vector<double> rel_err_per_slot;
  double mcc_mean = 0.0;
  double rel_err_mean = 0.0;
  double edge_threshold = kDefaultEdgeThreshold;
};

inline EvalReport evaluate(const std::vector<WeightVector>& estimate, const std::vector<WeightVector>& truth,
                           double threshold = kDefaultEdgeThreshold)
{
  if (estimate.size() != truth.size()) throw std::invalid_argument("evaluate: slot count mismatch");
  if (truth.empty()) throw std::invalid_argument("evaluate: no slots");
  EvalReport rep;
  rep.edge_threshold = threshold;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    rep.mcc_per_slot.push_back(mcc(estimate[t], truth[t], threshold));
    rep.rel_err_per_slot.push_back(relative_error(estimate[t], truth[t]));
    rep.mcc_mean += rep.mcc_per_slot.back();
    rep.rel_err_mean += rep.rel_err_per_slot.back();
  }
  rep.mcc_mean /= double(truth.size());
  rep.rel_err_mean /= double(truth.size());
  return rep;
}

} // namespace tvgl
