#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "louvain/graph.hpp"
#include "louvain/io.hpp"
#include "support.hpp"

namespace louvain {
namespace {

using testing::make_graph;

TEST(Graph, SingleUnitEdge) {
  std::istringstream in("0 1 1.0\n");
  const auto loaded = read_edge_list(in);
  const Graph& g = loaded.graph;
  EXPECT_EQ(g.num_vertices(), 2u);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_DOUBLE_EQ(g.total_weight(), 1.0);
  EXPECT_DOUBLE_EQ(g.weighted_degree(0), 1.0);
  EXPECT_DOUBLE_EQ(g.weighted_degree(1), 1.0);
}

TEST(Graph, DuplicateRecordsMergeBySumming) {
  std::istringstream in("0 1 1.0\n1 0 2.0\n");
  const auto loaded = read_edge_list(in);
  EXPECT_EQ(loaded.graph.num_edges(), 1u);
  EXPECT_DOUBLE_EQ(edge_weight(loaded.graph, 0, 1), 3.0);
  EXPECT_DOUBLE_EQ(edge_weight(loaded.graph, 1, 0), 3.0);
  EXPECT_EQ(loaded.merged_duplicates, 1u);
}

TEST(Graph, SelfLoopCountsTwiceTowardDegree) {
  std::istringstream in("0 0 1.0\n");
  const auto loaded = read_edge_list(in);
  const Graph& g = loaded.graph;
  ASSERT_EQ(g.num_vertices(), 1u);
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_DOUBLE_EQ(g.self_loop(0), 1.0);
  EXPECT_DOUBLE_EQ(g.weighted_degree(0), 2.0);
  EXPECT_DOUBLE_EQ(g.total_weight(), 1.0);
}

TEST(Graph, AdjacencyIsSortedSymmetricAndSumsToTwiceM) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    // Integer weights keep every partial sum exact, so the totals must agree bit for bit.
    const Graph g = testing::random_graph(rng, 30, 0.2, 10.0, 0.2, true);
    double sum = 0.0;
    for (VertexId u = 0; u < g.num_vertices(); ++u) {
      const auto nbrs = g.neighbors(u);
      const auto ws = g.weights(u);
      EXPECT_TRUE(std::is_sorted(nbrs.begin(), nbrs.end()));
      EXPECT_EQ(std::adjacent_find(nbrs.begin(), nbrs.end()), nbrs.end());
      for (std::size_t x = 0; x < nbrs.size(); ++x) {
        EXPECT_GT(ws[x], 0.0);
        sum += nbrs[x] == u ? 2.0 * ws[x] : ws[x];
        if (nbrs[x] != u) { EXPECT_EQ(edge_weight(g, nbrs[x], u), ws[x]); }
      }
    }
    EXPECT_EQ(sum, 2.0 * g.total_weight());
  }
}

TEST(Graph, CanonicalBuilderRejectsBadInput) {
  const std::vector<Edge> dup = {{0, 1, 1.0}, {0, 1, 2.0}};
  EXPECT_THROW(Graph::from_canonical_edges(2, dup), PreconditionError);
  const std::vector<Edge> zero = {{0, 1, 0.0}};
  EXPECT_THROW(Graph::from_canonical_edges(2, zero), PreconditionError);
  const std::vector<Edge> range = {{0, 5, 1.0}};
  EXPECT_THROW(Graph::from_canonical_edges(2, range), PreconditionError);
}

TEST(DegreeStats, RegularGraph) {
  const auto s = degree_stats(testing::complete_graph(4));
  EXPECT_EQ(s.max_degree, 3u);
  EXPECT_DOUBLE_EQ(s.avg_degree, 3.0);
  EXPECT_DOUBLE_EQ(s.rsd, 0.0);
}

TEST(DegreeStats, StarAndPath) {
  const auto star = degree_stats(testing::star3());
  EXPECT_EQ(star.max_degree, 3u);
  EXPECT_DOUBLE_EQ(star.avg_degree, 1.5);
  EXPECT_NEAR(star.rsd, 0.5773502691896257, 1e-12);

  const auto path = degree_stats(testing::path3());
  EXPECT_EQ(path.max_degree, 2u);
  EXPECT_NEAR(path.avg_degree, 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(path.rsd, 0.3535533905932738, 1e-12);
}

TEST(DegreeStats, SelfLoopCountsOnce) {
  const Graph g = Graph::from_edges(2, {{0, 0, 5.0}, {0, 1, 1.0}});
  const auto s = degree_stats(g);
  EXPECT_EQ(s.max_degree, 2u);
  EXPECT_DOUBLE_EQ(s.avg_degree, 1.5);
}

TEST(DegreeStats, EdgelessGraphIsAnError) {
  const Graph g = Graph::from_canonical_edges(3, {});
  EXPECT_THROW(degree_stats(g), EdgelessGraphError);
  EXPECT_THROW(degree_stats(Graph{}), EdgelessGraphError);
}

}  // namespace
}  // namespace louvain
