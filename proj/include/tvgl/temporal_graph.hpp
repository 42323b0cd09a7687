#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tvgl {

struct TemporalEdge
{
  int i = 0;
  int j = 0;
  double gamma = 1.0;

  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Weighted undirected graph over T time slots. Slots are 0-based. Edges are
/// stored with i < j and sorted by (i, j); edge n owns consensus/dual columns
/// 2n (the i side) and 2n + 1 (the j side).
class TemporalGraph
{
public:
  TemporalGraph() = default;

  /// Validates and canonicalizes. Pairs given as (j, i) are flipped.
  TemporalGraph(int num_slots, std::vector<TemporalEdge> edges) : num_slots_(num_slots), edges_(std::move(edges))
  {
    if (num_slots_ < 1) throw std::invalid_argument("temporal graph needs at least one slot");
    for (auto& e : edges_) {
      if (e.i == e.j) throw std::invalid_argument("temporal edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") is a self-relation");
      if (e.i > e.j) std::swap(e.i, e.j);
      if (e.i < 0 || e.j >= num_slots_)
        throw std::invalid_argument("temporal edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") out of range for T=" + std::to_string(num_slots_));
      if (!(e.gamma > 0.0)) throw std::invalid_argument("temporal edge weight must be positive");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const TemporalEdge& a, const TemporalEdge& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
    for (std::size_t n = 1; n < edges_.size(); ++n)
      if (edges_[n].i == edges_[n - 1].i && edges_[n].j == edges_[n - 1].j)
        throw std::invalid_argument("duplicate temporal edge (" + std::to_string(edges_[n].i) + "," + std::to_string(edges_[n].j) + ")");

    adjacency_.assign(num_slots_, {});
    for (std::size_t n = 0; n < edges_.size(); ++n) {
      adjacency_[edges_[n].i].push_back({edges_[n].j, 2 * n});
      adjacency_[edges_[n].j].push_back({edges_[n].i, 2 * n + 1});
    }
    for (auto& list : adjacency_)
      std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) { return a.slot < b.slot; });
  }

  static TemporalGraph from_edge_list(int num_slots, std::vector<TemporalEdge> edges)
  {
    return TemporalGraph(num_slots, std::move(edges));
  }

  /// Consecutive slots linked with a common weight. gamma = 1 is the plain
  /// temporal-homogeneity chain.
  static TemporalGraph chain(int num_slots, double gamma = 1.0)
  {
    if (num_slots < 1) throw std::invalid_argument("chain needs at least one slot");
    std::vector<TemporalEdge> edges;
    for (int t = 1; t < num_slots; ++t) edges.push_back({t - 1, t, gamma});
    return TemporalGraph(num_slots, std::move(edges));
  }

  /// No edges: every slot is learned independently.
  static TemporalGraph independent(int num_slots) { return TemporalGraph(num_slots, {}); }

  /// One endpoint of an edge as seen from a slot: the other slot, and the
  /// consensus column this slot owns for that edge.
  struct Incidence
  {
    int slot;
    std::size_t column;
  };

  int num_slots() const { return num_slots_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<TemporalEdge>& edges() const { return edges_; }

  const std::vector<Incidence>& incidences(int t) const
  {
    check_slot(t);
    return adjacency_[t];
  }

  std::vector<int> neighbors(int t) const
  {
    check_slot(t);
    std::vector<int> out;
    out.reserve(adjacency_[t].size());
    for (const auto& inc : adjacency_[t]) out.push_back(inc.slot);
    return out;
  }

  std::size_t degree(int t) const
  {
    check_slot(t);
    return adjacency_[t].size();
  }

  bool is_chain() const
  {
    if (edges_.size() + 1 != std::size_t(num_slots_)) return false;
    for (std::size_t n = 0; n < edges_.size(); ++n)
      if (edges_[n].i != int(n) || edges_[n].j != int(n) + 1) return false;
    return true;
  }

  friend bool operator==(const TemporalGraph& a, const TemporalGraph& b)
  {
    return a.num_slots_ == b.num_slots_ && a.edges_ == b.edges_;
  }

private:
  void check_slot(int t) const
  {
    if (t < 0 || t >= num_slots_) throw std::out_of_range("slot index " + std::to_string(t) + " out of range");
  }

  int num_slots_ = 0;
  std::vector<TemporalEdge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

} // namespace tvgl
