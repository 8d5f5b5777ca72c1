#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "louvain/graph.hpp"
#include "louvain/parallel.hpp"
#include "louvain/types.hpp"

namespace louvain {

/// Result of folding single-degree vertices into their neighbor.
struct VfMapping {
  /// original vertex -> compacted vertex
  std::vector<VertexId> map;
  Graph compacted;
  std::size_t merged = 0;
};

/// Merges every vertex whose only incident edge is a non-self edge (i, j)
/// into j, adding the edge weight to j's self loop. One pass over the input
/// degrees, no chains. In an isolated pair the higher id folds into the lower.
inline VfMapping vf_compact(const Graph& g, int workers = 0) {
  const VertexId n = g.num_vertices();
  // target[i] == i for survivors, otherwise the vertex i folds into.
  std::vector<VertexId> target(n);
  auto is_leaf = [&](VertexId v) { return g.degree(v) == 1 && g.neighbors(v)[0] != v; };
  parallel_for(n, resolve_workers(workers), [&](std::size_t idx) {
    const auto v = static_cast<VertexId>(idx);
    target[v] = v;
    if (!is_leaf(v)) return;
    const VertexId nbr = g.neighbors(v)[0];
    if (is_leaf(nbr) && nbr > v) return;
    target[v] = nbr;
  });

  VfMapping out;
  std::vector<VertexId> compact_id(n, kInvalidVertex);
  VertexId next = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (target[v] == v) compact_id[v] = next++;
  }
  out.map.resize(n);
  std::vector<Weight> extra_loop(next, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    out.map[v] = compact_id[target[v]];
    if (target[v] != v) {
      extra_loop[out.map[v]] += g.weights(v)[0];
      ++out.merged;
    }
  }

  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (VertexId u = 0; u < n; ++u) {
    if (target[u] != u) continue;
    const VertexId cu = compact_id[u];
    const auto nbrs = g.neighbors(u);
    const auto ws = g.weights(u);
    bool had_loop = false;
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      const VertexId v = nbrs[x];
      if (target[v] != v || v < u) continue;
      if (v == u) {
        had_loop = true;
        edges.push_back({cu, cu, ws[x] + extra_loop[cu]});
      } else {
        edges.push_back({cu, compact_id[v], ws[x]});
      }
    }
    if (!had_loop && extra_loop[cu] > 0.0) edges.push_back({cu, cu, extra_loop[cu]});
  }
  out.compacted = Graph::from_canonical_edges(next, edges);
  return out;
}

/// Distance-1 vertex coloring.
struct Coloring {
  std::vector<std::uint32_t> color;
  std::uint32_t num_colors = 0;
  /// Number of vertices per color.
  std::vector<std::size_t> class_sizes;

  /// Vertices of each color, ascending by id.
  std::vector<std::vector<VertexId>> classes() const {
    std::vector<std::vector<VertexId>> out(num_colors);
    for (std::size_t v = 0; v < color.size(); ++v) out[color[v]].push_back(static_cast<VertexId>(v));
    return out;
  }

  /// Relative standard deviation of the class sizes.
  double class_size_rsd() const {
    if (class_sizes.empty()) return 0.0;
    double mean = 0.0;
    for (auto s : class_sizes) mean += static_cast<double>(s);
    mean /= static_cast<double>(class_sizes.size());
    double sq = 0.0;
    for (auto s : class_sizes) sq += (static_cast<double>(s) - mean) * (static_cast<double>(s) - mean);
    return std::sqrt(sq / static_cast<double>(class_sizes.size())) / mean;
  }
};

/// Speculative parallel greedy coloring. Each round, every uncolored vertex
/// picks the smallest color missing among neighbors colored in earlier
/// rounds; of two adjacent vertices that picked the same color in the same
/// round, the higher id is uncolored again. The result depends only on the
/// graph, never on the worker count.
inline Coloring color_graph(const Graph& g, int workers = 0) {
  constexpr std::uint32_t kNone = UINT32_MAX;
  const VertexId n = g.num_vertices();
  const int threads = resolve_workers(workers);
  std::vector<std::uint32_t> color(n, kNone);
  std::vector<std::uint32_t> tentative(n, kNone);
  std::vector<VertexId> pending(n);
  for (VertexId v = 0; v < n; ++v) pending[v] = v;
  std::vector<std::vector<char>> scratch(static_cast<std::size_t>(threads));
  std::vector<char> keep;

  while (!pending.empty()) {
    parallel_for(pending.size(), threads, [&](std::size_t idx) {
      const VertexId v = pending[idx];
      auto& used = scratch[static_cast<std::size_t>(current_worker_index())];
      const auto nbrs = g.neighbors(v);
      used.assign(nbrs.size() + 1, 0);
      for (VertexId u : nbrs) {
        const auto c = color[u];
        if (u != v && c != kNone && c < used.size()) used[c] = 1;
      }
      std::uint32_t c = 0;
      while (used[c]) ++c;
      tentative[v] = c;
    });
    keep.assign(pending.size(), 1);
    parallel_for(pending.size(), threads, [&](std::size_t idx) {
      const VertexId v = pending[idx];
      for (VertexId u : g.neighbors(v)) {
        if (u < v && color[u] == kNone && tentative[u] == tentative[v]) {
          keep[idx] = 0;
          return;
        }
      }
    });
    // A vertex loses only to a lower-id pending neighbor, so `color` can be
    // committed after the conflict scan without affecting it.
    std::vector<VertexId> retry;
    for (std::size_t idx = 0; idx < pending.size(); ++idx) {
      if (keep[idx]) {
        color[pending[idx]] = tentative[pending[idx]];
      } else {
        retry.push_back(pending[idx]);
      }
    }
    for (VertexId v : retry) tentative[v] = kNone;
    pending.swap(retry);
  }

  Coloring out;
  out.color = std::move(color);
  for (auto c : out.color) out.num_colors = std::max(out.num_colors, c + 1);
  out.class_sizes.assign(out.num_colors, 0);
  for (auto c : out.color) ++out.class_sizes[c];
  return out;
}

/// True when no non-self edge joins two vertices of the same color.
inline bool is_valid_coloring(const Graph& g, const Coloring& coloring) {
  if (coloring.color.size() != g.num_vertices()) return false;
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    for (VertexId v : g.neighbors(u)) {
      if (u != v && coloring.color[u] == coloring.color[v]) return false;
    }
  }
  return true;
}

}  // namespace louvain
