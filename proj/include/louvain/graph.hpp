#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "louvain/types.hpp"

namespace louvain {

/// One undirected edge record. Self loops have `u == v`.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Weight weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable weighted undirected graph in compressed adjacency form.
///
/// Every non-self edge {i, j} is stored in both adjacency ranges, a self loop
/// is stored once in its vertex's range. Ranges are sorted by neighbor id.
/// A self loop of weight w adds 2w to the weighted degree, so the total
/// weight satisfies m = sum(k_i) / 2 for every graph.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds a graph from unique canonical edges (u <= v, no repeated pair,
  /// strictly positive weights). Use `from_edges` for unsanitized input.
  static Graph from_canonical_edges(VertexId num_vertices, std::span<const Edge> edges);

  /// Canonicalizes, sorts and merges duplicate records by summing weights.
  /// `merged` receives the number of records folded into an earlier one.
  static Graph from_edges(VertexId num_vertices, std::vector<Edge> edges, std::size_t* merged = nullptr);

  VertexId num_vertices() const noexcept { return static_cast<VertexId>(offsets_.size() - 1); }
  /// Distinct undirected edges, self loops included.
  EdgeIndex num_edges() const noexcept { return num_edges_; }
  Weight total_weight() const noexcept { return total_weight_; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::span<const Weight> weights(VertexId v) const noexcept {
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  /// Unweighted degree; a self loop counts once.
  std::size_t degree(VertexId v) const noexcept { return static_cast<std::size_t>(offsets_[v + 1] - offsets_[v]); }
  Weight weighted_degree(VertexId v) const noexcept { return weighted_degrees_[v]; }
  std::span<const Weight> weighted_degrees() const noexcept { return weighted_degrees_; }
  /// Weight of the self loop at v, 0 when absent.
  Weight self_loop(VertexId v) const noexcept { return self_loops_[v]; }

  std::span<const EdgeIndex> offsets() const noexcept { return offsets_; }

  /// Canonical edges (u <= v) in ascending (u, v) order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<EdgeIndex> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<Weight> weights_;
  std::vector<Weight> weighted_degrees_;
  std::vector<Weight> self_loops_;
  EdgeIndex num_edges_ = 0;
  Weight total_weight_ = 0.0;
};

inline Graph Graph::from_canonical_edges(VertexId num_vertices, std::span<const Edge> edges) {
  Graph g;
  const std::size_t n = num_vertices;
  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : edges) {
    if (e.u >= num_vertices || e.v >= num_vertices) throw PreconditionError("edge endpoint out of range");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) throw PreconditionError("edge weights must be positive and finite");
    ++g.offsets_[e.u + 1];
    if (e.u != e.v) ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.neighbors_.resize(g.offsets_[n]);
  g.weights_.resize(g.offsets_[n]);
  std::vector<EdgeIndex> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.neighbors_[cursor[e.u]] = e.v;
    g.weights_[cursor[e.u]++] = e.weight;
    if (e.u != e.v) {
      g.neighbors_[cursor[e.v]] = e.u;
      g.weights_[cursor[e.v]++] = e.weight;
    }
  }

  g.weighted_degrees_.assign(n, 0.0);
  g.self_loops_.assign(n, 0.0);
  std::vector<std::pair<VertexId, Weight>> row;
  for (std::size_t v = 0; v < n; ++v) {
    const auto begin = g.offsets_[v];
    const auto end = g.offsets_[v + 1];
    row.clear();
    for (auto x = begin; x < end; ++x) row.emplace_back(g.neighbors_[x], g.weights_[x]);
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Weight k = 0.0;
    for (std::size_t x = 0; x < row.size(); ++x) {
      if (x > 0 && row[x].first == row[x - 1].first) throw PreconditionError("duplicate edge in canonical edge list");
      g.neighbors_[begin + x] = row[x].first;
      g.weights_[begin + x] = row[x].second;
      if (row[x].first == v) {
        g.self_loops_[v] = row[x].second;
        k += 2.0 * row[x].second;
      } else {
        k += row[x].second;
      }
    }
    g.weighted_degrees_[v] = k;
  }
  g.num_edges_ = edges.size();
  g.total_weight_ = 0.5 * std::accumulate(g.weighted_degrees_.begin(), g.weighted_degrees_.end(), 0.0);
  return g;
}

inline Graph Graph::from_edges(VertexId num_vertices, std::vector<Edge> edges, std::size_t* merged) {
  for (Edge& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  // Stable so that merged weights are summed in input order.
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  std::size_t folded = 0;
  std::vector<Edge> unique;
  unique.reserve(edges.size());
  for (const Edge& e : edges) {
    if (!unique.empty() && unique.back().u == e.u && unique.back().v == e.v) {
      unique.back().weight += e.weight;
      ++folded;
    } else {
      unique.push_back(e);
    }
  }
  if (merged != nullptr) *merged = folded;
  return from_canonical_edges(num_vertices, unique);
}

inline std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (VertexId u = 0; u < num_vertices(); ++u) {
    auto nbrs = neighbors(u);
    auto ws = weights(u);
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      if (nbrs[x] >= u) out.push_back({u, nbrs[x], ws[x]});
    }
  }
  return out;
}

/// Weight of edge {u, v}, 0 when the vertices are not adjacent.
inline Weight edge_weight(const Graph& g, VertexId u, VertexId v) {
  const auto nbrs = g.neighbors(u);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return 0.0;
  return g.weights(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

/// Unweighted degree distribution summary.
struct DegreeStats {
  std::size_t max_degree = 0;
  double avg_degree = 0.0;
  /// Population standard deviation of the degrees divided by their mean.
  double rsd = 0.0;
};

inline DegreeStats degree_stats(const Graph& g) {
  if (g.num_vertices() == 0 || g.num_edges() == 0) throw EdgelessGraphError("no edges");
  const double n = g.num_vertices();
  DegreeStats stats;
  double sum = 0.0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    stats.max_degree = std::max(stats.max_degree, g.degree(v));
    sum += static_cast<double>(g.degree(v));
  }
  stats.avg_degree = sum / n;
  double sq = 0.0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const double d = static_cast<double>(g.degree(v)) - stats.avg_degree;
    sq += d * d;
  }
  stats.rsd = std::sqrt(sq / n) / stats.avg_degree;
  return stats;
}

}  // namespace louvain
