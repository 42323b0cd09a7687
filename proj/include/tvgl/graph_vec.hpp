#pragma once

// Graphs as non-negative upper-triangular weight vectors.
//
// A graph on d vertices is stored as a vector of p = d(d-1)/2 edge weights.
// Entry k corresponds to the pair (i, j), i < j, in row-major order of the
// strict upper triangle:
//
//   (0,1) (0,2) ... (0,d-1) (1,2) ... (1,d-1) ... (d-2,d-1)
//
// Every module uses this single ordering.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace tvgl {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Length-p vector of edge weights (the learned variable of one time slot).
using WeightVector = Eigen::VectorXd;
/// Length-p vector of squared row distances of a signal matrix.
using DistanceVector = Eigen::VectorXd;
/// Symmetric, zero-diagonal, non-negative d x d matrix.
using AdjacencyMatrix = Eigen::MatrixXd;

inline Eigen::Index num_pairs(Eigen::Index d) { return d * (d - 1) / 2; }

/// Inverse of num_pairs. Throws unless p = d(d-1)/2 for some d >= 2.
inline Eigen::Index vertex_count(Eigen::Index p)
{
  if (p < 1) throw std::invalid_argument("weight vector must have at least one entry");
  const auto d = static_cast<Eigen::Index>(std::llround((1.0 + std::sqrt(1.0 + 8.0 * double(p))) / 2.0));
  if (num_pairs(d) != p)
    throw std::invalid_argument("weight vector length " + std::to_string(p) + " is not d(d-1)/2");
  return d;
}

/// Flat index of pair (i, j), i < j.
inline Eigen::Index pair_index(Eigen::Index i, Eigen::Index j, Eigen::Index d)
{
  return i * d - i * (i + 1) / 2 + (j - i - 1);
}

/// Calls fn(i, j, k) for every pair in flat order.
template <typename Fn>
void for_each_pair(Eigen::Index d, Fn&& fn)
{
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) fn(i, j, k++);
}

inline bool is_valid_weight_vector(const Eigen::Ref<const Vector>& w)
{
  if (w.size() < 1) return false;
  const auto d = static_cast<Eigen::Index>(std::llround((1.0 + std::sqrt(1.0 + 8.0 * double(w.size()))) / 2.0));
  return num_pairs(d) == w.size() && (w.array() >= 0.0).all();
}

inline AdjacencyMatrix weight_to_adjacency(const Eigen::Ref<const Vector>& w)
{
  const Eigen::Index d = vertex_count(w.size());
  AdjacencyMatrix A = AdjacencyMatrix::Zero(d, d);
  for_each_pair(d, [&](Eigen::Index i, Eigen::Index j, Eigen::Index k) {
    A(i, j) = w[k];
    A(j, i) = w[k];
  });
  return A;
}

/// Rejects matrices that are not square, not exactly symmetric, or carry a
/// nonzero diagonal.
inline WeightVector adjacency_to_weight(const Eigen::Ref<const Matrix>& A)
{
  if (A.rows() != A.cols()) throw std::invalid_argument("adjacency matrix must be square");
  const Eigen::Index d = A.rows();
  if (d < 2) throw std::invalid_argument("adjacency matrix needs at least two vertices");
  for (Eigen::Index i = 0; i < d; ++i) {
    if (A(i, i) != 0.0) throw std::invalid_argument("adjacency matrix has a nonzero diagonal");
    for (Eigen::Index j = i + 1; j < d; ++j)
      if (A(i, j) != A(j, i)) throw std::invalid_argument("adjacency matrix is not symmetric");
  }
  WeightVector w(num_pairs(d));
  for_each_pair(d, [&](Eigen::Index i, Eigen::Index j, Eigen::Index k) { w[k] = A(i, j); });
  return w;
}

/// Sw = A1, the vector of node degrees. Matrix-free: S has exactly 2p nonzeros.
inline Vector degree_operator(const Eigen::Ref<const Vector>& w)
{
  const Eigen::Index d = vertex_count(w.size());
  Vector deg = Vector::Zero(d);
  for_each_pair(d, [&](Eigen::Index i, Eigen::Index j, Eigen::Index k) {
    deg[i] += w[k];
    deg[j] += w[k];
  });
  return deg;
}

/// S^T v: the entry for pair (i, j) is v_i + v_j.
inline Vector degree_operator_adjoint(const Eigen::Ref<const Vector>& v)
{
  const Eigen::Index d = v.size();
  if (d < 2) throw std::invalid_argument("degree vector needs at least two vertices");
  Vector out(num_pairs(d));
  for_each_pair(d, [&](Eigen::Index i, Eigen::Index j, Eigen::Index k) { out[k] = v[i] + v[j]; });
  return out;
}

/// Squared Euclidean distances between the rows of a d x N signal matrix.
inline DistanceVector pairwise_distances(const Eigen::Ref<const Matrix>& X)
{
  if (X.rows() < 2 || X.cols() < 1)
    throw std::invalid_argument("signal matrix must have at least two rows and one column");
  const Eigen::Index d = X.rows();
  DistanceVector r(num_pairs(d));
  for_each_pair(d, [&](Eigen::Index i, Eigen::Index j, Eigen::Index k) {
    r[k] = (X.row(i) - X.row(j)).squaredNorm();
  });
  return r;
}

/// Combinatorial Laplacian diag(Sw) - A(w).
inline Matrix laplacian(const Eigen::Ref<const Vector>& w)
{
  Matrix L = -weight_to_adjacency(w);
  L.diagonal() = degree_operator(w);
  return L;
}

} // namespace tvgl
