#pragma once

// Fixtures, random generators and brute-force oracles shared by the test
// binaries. Nothing here calls into the engine.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "louvain/graph.hpp"
#include "louvain/types.hpp"

namespace louvain::testing {

inline Graph make_graph(VertexId n, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 1.0});
  return Graph::from_edges(n, edges);
}

inline Graph complete_graph(VertexId n) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return make_graph(n, pairs);
}

inline Graph two_triangles() { return make_graph(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}}); }
inline Graph triangle() { return make_graph(3, {{0, 1}, {0, 2}, {1, 2}}); }
inline Graph star3() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}}); }
inline Graph path3() { return make_graph(3, {{0, 1}, {1, 2}}); }

/// Zachary's karate club (34 vertices, 78 edges), 0-based.
inline Graph karate_club() {
  static const std::vector<std::pair<VertexId, VertexId>> kEdges = {
      {0, 1},   {0, 2},   {0, 3},   {0, 4},   {0, 5},   {0, 6},   {0, 7},   {0, 8},   {0, 10},  {0, 11},
      {0, 12},  {0, 13},  {0, 17},  {0, 19},  {0, 21},  {0, 31},  {1, 2},   {1, 3},   {1, 7},   {1, 13},
      {1, 17},  {1, 19},  {1, 21},  {1, 30},  {2, 3},   {2, 7},   {2, 8},   {2, 9},   {2, 13},  {2, 27},
      {2, 28},  {2, 32},  {3, 7},   {3, 12},  {3, 13},  {4, 6},   {4, 10},  {5, 6},   {5, 10},  {5, 16},
      {6, 16},  {8, 30},  {8, 32},  {8, 33},  {9, 33},  {13, 33}, {14, 32}, {14, 33}, {15, 32}, {15, 33},
      {18, 32}, {18, 33}, {19, 33}, {20, 32}, {20, 33}, {22, 32}, {22, 33}, {23, 25}, {23, 27}, {23, 29},
      {23, 32}, {23, 33}, {24, 25}, {24, 27}, {24, 31}, {25, 31}, {26, 29}, {26, 33}, {27, 33}, {28, 31},
      {28, 33}, {29, 32}, {29, 33}, {30, 32}, {30, 33}, {31, 32}, {31, 33}, {32, 33}};
  return make_graph(34, kEdges);
}

/// Erdos-Renyi style graph with optional self loops and weights in (0, max_weight].
inline Graph random_graph(std::mt19937_64& rng, VertexId n, double edge_prob, double max_weight = 10.0,
                          double loop_prob = 0.0, bool integer_weights = false) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.0, max_weight);
  std::uniform_int_distribution<int> int_weight(1, static_cast<int>(max_weight));
  auto draw = [&] {
    if (integer_weights) return static_cast<double>(int_weight(rng));
    double w = 0.0;
    while (w <= 0.0) w = max_weight - weight(rng);
    return w;
  };
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    if (coin(rng) < loop_prob) edges.push_back({u, u, draw()});
    for (VertexId v = u + 1; v < n; ++v) {
      if (coin(rng) < edge_prob) edges.push_back({u, v, draw()});
    }
  }
  return Graph::from_edges(n, edges);
}

/// Sparse random graph with about `avg_degree * n / 2` unit edges, built by
/// sampling endpoints; useful where edge_prob loops get slow.
inline Graph sparse_random_graph(std::mt19937_64& rng, VertexId n, double avg_degree, bool weighted = false) {
  std::uniform_int_distribution<VertexId> pick(0, n - 1);
  std::uniform_real_distribution<double> weight(0.5, 5.0);
  const auto target = static_cast<std::size_t>(avg_degree * n / 2.0);
  std::vector<Edge> edges;
  edges.reserve(target);
  for (std::size_t e = 0; e < target; ++e) {
    VertexId u = pick(rng);
    VertexId v = pick(rng);
    if (u == v) continue;
    edges.push_back({u, v, weighted ? weight(rng) : 1.0});
  }
  return Graph::from_edges(n, edges);
}

/// Random geometric graph on the unit square: vertices closer than `radius`
/// are adjacent. Grid bucketing keeps construction near-linear.
inline Graph random_geometric_graph(std::uint64_t seed, VertexId n, double avg_degree) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  const double pi = std::acos(-1.0);
  const double radius = std::sqrt(avg_degree / (static_cast<double>(n) * pi));
  std::vector<double> x(n), y(n);
  for (VertexId v = 0; v < n; ++v) {
    x[v] = coord(rng);
    y[v] = coord(rng);
  }
  const auto cells = std::max<std::size_t>(1, static_cast<std::size_t>(1.0 / radius));
  std::vector<std::vector<VertexId>> grid(cells * cells);
  auto cell_of = [&](double c) { return std::min(cells - 1, static_cast<std::size_t>(c * static_cast<double>(cells))); };
  for (VertexId v = 0; v < n; ++v) grid[cell_of(x[v]) * cells + cell_of(y[v])].push_back(v);
  std::vector<Edge> edges;
  const double r2 = radius * radius;
  for (VertexId u = 0; u < n; ++u) {
    const auto cx = cell_of(x[u]);
    const auto cy = cell_of(y[u]);
    for (std::size_t gx = cx == 0 ? 0 : cx - 1; gx <= std::min(cells - 1, cx + 1); ++gx) {
      for (std::size_t gy = cy == 0 ? 0 : cy - 1; gy <= std::min(cells - 1, cy + 1); ++gy) {
        for (VertexId v : grid[gx * cells + gy]) {
          if (v <= u) continue;
          const double dx = x[u] - x[v];
          const double dy = y[u] - y[v];
          if (dx * dx + dy * dy < r2) edges.push_back({u, v, 1.0});
        }
      }
    }
  }
  return Graph::from_canonical_edges(n, edges);
}

/// Uniformly random labels in [0, k).
inline std::vector<CommunityId> random_assignment(std::mt19937_64& rng, VertexId n, VertexId k) {
  std::uniform_int_distribution<CommunityId> pick(0, std::max<VertexId>(1, k) - 1);
  std::vector<CommunityId> out(n);
  for (auto& c : out) c = pick(rng);
  return out;
}

/// Visits every set partition of {0..n-1} as a restricted growth string.
inline void for_each_partition(VertexId n, const std::function<void(const std::vector<CommunityId>&)>& visit) {
  std::vector<CommunityId> cur(n, 0);
  std::function<void(VertexId, CommunityId)> rec = [&](VertexId i, CommunityId used) {
    if (i == n) {
      visit(cur);
      return;
    }
    for (CommunityId c = 0; c <= used && c < n; ++c) {
      cur[i] = c;
      rec(i + 1, std::max(used, static_cast<CommunityId>(c + 1)));
    }
  };
  if (n == 0) {
    visit(cur);
    return;
  }
  rec(0, 0);
}

/// Modularity straight from the pair formula: (1/2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j),
/// with A_ii = 2 * self-loop weight. Independent of the library's accounting.
inline double pairwise_modularity(const Graph& g, const std::vector<CommunityId>& part) {
  const VertexId n = g.num_vertices();
  std::vector<std::vector<double>> adj(n, std::vector<double>(n, 0.0));
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) {
      adj[e.u][e.u] += 2.0 * e.weight;
      k[e.u] += 2.0 * e.weight;
      two_m += 2.0 * e.weight;
    } else {
      adj[e.u][e.v] += e.weight;
      adj[e.v][e.u] += e.weight;
      k[e.u] += e.weight;
      k[e.v] += e.weight;
      two_m += 2.0 * e.weight;
    }
  }
  double q = 0.0;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = 0; j < n; ++j)
      if (part[i] == part[j]) q += adj[i][j] - k[i] * k[j] / two_m;
  return q / two_m;
}

/// Best modularity over all partitions (n <= 9 or so).
inline double brute_force_max_modularity(const Graph& g, std::vector<CommunityId>* best_partition = nullptr) {
  double best = -2.0;
  for_each_partition(g.num_vertices(), [&](const std::vector<CommunityId>& p) {
    const double q = pairwise_modularity(g, p);
    if (q > best) {
      best = q;
      if (best_partition != nullptr) *best_partition = p;
    }
  });
  return best;
}

/// Relabels a partition by first appearance so equal groupings compare equal.
inline std::vector<CommunityId> canonical(const std::vector<CommunityId>& part) {
  std::map<CommunityId, CommunityId> relabel;
  std::vector<CommunityId> out(part.size());
  for (std::size_t v = 0; v < part.size(); ++v) {
    out[v] = relabel.try_emplace(part[v], static_cast<CommunityId>(relabel.size())).first->second;
  }
  return out;
}

}  // namespace louvain::testing
