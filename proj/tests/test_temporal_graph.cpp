#include "tvgl/temporal_graph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace tvgl;

namespace {

TemporalGraph fig3()
{
  return TemporalGraph::from_edge_list(6, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}, {0, 5, 1.0}});
}

} // namespace

TEST(TemporalGraph, ChainEdges)
{
  const auto g = TemporalGraph::chain(3, 1.0);
  ASSERT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edges()[0], (TemporalEdge{0, 1, 1.0}));
  EXPECT_EQ(g.edges()[1], (TemporalEdge{1, 2, 1.0}));
  EXPECT_EQ(TemporalGraph::chain(1).num_edges(), 0u);
  EXPECT_EQ(TemporalGraph::chain(6).num_edges(), 5u);
  EXPECT_TRUE(TemporalGraph::chain(6).is_chain());
  EXPECT_FALSE(fig3().is_chain());
  EXPECT_THROW(TemporalGraph::chain(0), std::invalid_argument);
}

TEST(TemporalGraph, ChainDegrees)
{
  for (int T = 2; T < 10; ++T) {
    const auto g = TemporalGraph::chain(T);
    EXPECT_EQ(g.num_edges(), std::size_t(T - 1));
    for (int t = 1; t + 1 < T; ++t) EXPECT_EQ(g.degree(t), 2u);
    EXPECT_EQ(g.degree(0), 1u);
    EXPECT_EQ(g.degree(T - 1), 1u);
  }
}

TEST(TemporalGraph, Neighbors)
{
  const auto c = TemporalGraph::chain(4);
  EXPECT_EQ(c.neighbors(1), (std::vector<int>{0, 2}));
  EXPECT_EQ(c.neighbors(0), (std::vector<int>{1}));
  const auto g = fig3();
  EXPECT_EQ(g.neighbors(0), (std::vector<int>{1, 5}));
  EXPECT_EQ(g.neighbors(5), (std::vector<int>{0}));
  EXPECT_THROW(g.neighbors(6), std::out_of_range);
  EXPECT_THROW(g.neighbors(-1), std::out_of_range);
}

TEST(TemporalGraph, RejectsInvalidEdges)
{
  EXPECT_THROW(TemporalGraph::from_edge_list(3, {{0, 1, 1.0}, {0, 1, 2.0}}), std::invalid_argument);
  EXPECT_THROW(TemporalGraph::from_edge_list(3, {{0, 1, 1.0}, {1, 0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(TemporalGraph::from_edge_list(3, {{2, 2, 1.0}}), std::invalid_argument);
  EXPECT_THROW(TemporalGraph::from_edge_list(3, {{0, 3, 1.0}}), std::invalid_argument);
  EXPECT_THROW(TemporalGraph::from_edge_list(3, {{0, 1, 0.0}}), std::invalid_argument);
  EXPECT_THROW(TemporalGraph::from_edge_list(3, {{0, 1, -1.0}}), std::invalid_argument);
  EXPECT_THROW(TemporalGraph::from_edge_list(0, {}), std::invalid_argument);
}

TEST(TemporalGraph, ReversedEdgeIsCanonicalized)
{
  const auto g = TemporalGraph::from_edge_list(3, {{2, 0, 0.5}});
  EXPECT_EQ(g.edges()[0], (TemporalEdge{0, 2, 0.5}));
}

TEST(TemporalGraph, IncidenceCountIsTwiceEdges)
{
  const auto g = fig3();
  std::size_t total = 0;
  for (int t = 0; t < g.num_slots(); ++t) total += g.degree(t);
  EXPECT_EQ(total, 2 * g.num_edges());
}

TEST(TemporalGraph, IncidenceColumnsFollowEdgeOrder)
{
  const auto g = fig3();
  for (int t = 0; t < g.num_slots(); ++t)
    for (const auto& inc : g.incidences(t)) {
      const auto& e = g.edges()[inc.column / 2];
      if (inc.column % 2 == 0) {
        EXPECT_EQ(e.i, t);
        EXPECT_EQ(e.j, inc.slot);
      } else {
        EXPECT_EQ(e.j, t);
        EXPECT_EQ(e.i, inc.slot);
      }
    }
}

TEST(TemporalGraph, OrderInsensitive)
{
  std::vector<TemporalEdge> edges{{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 0.5}, {3, 4, 1.0}, {0, 5, 3.0}, {1, 4, 1.5}};
  const auto ref = TemporalGraph::from_edge_list(6, edges);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    std::shuffle(edges.begin(), edges.end(), rng);
    EXPECT_EQ(TemporalGraph::from_edge_list(6, edges), ref);
  }
}
