#pragma once

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "louvain/graph.hpp"
#include "louvain/types.hpp"

namespace louvain {

/// Community assignment plus the per-community aggregates the gain formula
/// reads. Community ids double as their numeric labels, so the label of a
/// community is its id. Singleton initialization and rebuild renumbering both
/// keep that identity.
struct CommunityState {
  std::vector<CommunityId> assignment;
  /// Sum of member weighted degrees.
  std::vector<Weight> a_tot;
  /// Sum over members of the weight to same-community neighbors; every
  /// internal edge is counted from both ends and a self loop twice.
  std::vector<Weight> w_internal;
  std::vector<VertexId> sizes;

  static CommunityId label(CommunityId c) noexcept { return c; }

  std::size_t num_communities() const noexcept {
    std::size_t count = 0;
    for (VertexId s : sizes) count += s > 0 ? 1 : 0;
    return count;
  }
};

/// e_{i->C} for every community C adjacent to i. Self loops are excluded.
using CommunityWeights = std::map<CommunityId, Weight>;

inline CommunityState singleton_state(const Graph& g) {
  const std::size_t n = g.num_vertices();
  CommunityState s;
  s.assignment.resize(n);
  s.a_tot.resize(n);
  s.w_internal.resize(n);
  s.sizes.assign(n, 1);
  for (VertexId v = 0; v < n; ++v) {
    s.assignment[v] = v;
    s.a_tot[v] = g.weighted_degree(v);
    s.w_internal[v] = 2.0 * g.self_loop(v);
  }
  return s;
}

/// Rebuilds every aggregate from the assignment alone.
inline CommunityState recompute_state(const Graph& g, std::span<const CommunityId> assignment) {
  const std::size_t n = g.num_vertices();
  if (assignment.size() != n) throw PreconditionError("assignment size does not match the graph");
  CommunityState s;
  s.assignment.assign(assignment.begin(), assignment.end());
  s.a_tot.assign(n, 0.0);
  s.w_internal.assign(n, 0.0);
  s.sizes.assign(n, 0);
  for (VertexId i = 0; i < n; ++i) {
    const CommunityId c = assignment[i];
    if (c >= n) throw PreconditionError("community id out of range");
    s.a_tot[c] += g.weighted_degree(i);
    ++s.sizes[c];
    const auto nbrs = g.neighbors(i);
    const auto ws = g.weights(i);
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      if (nbrs[x] == i) {
        s.w_internal[c] += 2.0 * ws[x];
      } else if (assignment[nbrs[x]] == c) {
        s.w_internal[c] += ws[x];
      }
    }
  }
  return s;
}

namespace detail {
inline void require_weight(const Graph& g) {
  if (!(g.total_weight() > 0.0)) throw EdgelessGraphError("modularity undefined for edgeless graph");
}
}  // namespace detail

/// Q from the tracked aggregates.
inline double modularity(const Graph& g, const CommunityState& s) {
  detail::require_weight(g);
  const double two_m = 2.0 * g.total_weight();
  double internal = 0.0;
  double expected = 0.0;
  for (std::size_t c = 0; c < s.a_tot.size(); ++c) {
    if (s.sizes[c] == 0) continue;
    internal += s.w_internal[c];
    const double frac = s.a_tot[c] / two_m;
    expected += frac * frac;
  }
  return internal / two_m - expected;
}

/// Q evaluated straight from the definition by scanning every adjacency
/// entry. Independent of any tracked aggregate; used as a checker.
inline double modularity_from_scratch(const Graph& g, std::span<const CommunityId> assignment) {
  detail::require_weight(g);
  const std::size_t n = g.num_vertices();
  if (assignment.size() != n) throw PreconditionError("assignment size does not match the graph");
  const double two_m = 2.0 * g.total_weight();
  double e_sum = 0.0;
  std::map<CommunityId, double> degree_sum;
  for (VertexId i = 0; i < n; ++i) {
    degree_sum[assignment[i]] += g.weighted_degree(i);
    const auto nbrs = g.neighbors(i);
    const auto ws = g.weights(i);
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      if (nbrs[x] == i) {
        e_sum += 2.0 * ws[x];
      } else if (assignment[nbrs[x]] == assignment[i]) {
        e_sum += ws[x];
      }
    }
  }
  double expected = 0.0;
  for (const auto& [c, a] : degree_sum) expected += (a / two_m) * (a / two_m);
  return e_sum / two_m - expected;
}

/// Weights from vertex i into each neighboring community.
inline CommunityWeights community_weights(const Graph& g, const CommunityState& s, VertexId i) {
  CommunityWeights out;
  const auto nbrs = g.neighbors(i);
  const auto ws = g.weights(i);
  for (std::size_t x = 0; x < nbrs.size(); ++x) {
    if (nbrs[x] != i) out[s.assignment[nbrs[x]]] += ws[x];
  }
  return out;
}

/// Gain of moving a vertex with weighted degree `k` from its community into
/// another one. `e_own` and `a_own_without` describe the current community
/// with the vertex itself removed.
inline double move_gain(double e_target, double e_own, double k, double a_own_without, double a_target,
                        double m) noexcept {
  const double two_m = 2.0 * m;
  return (e_target - e_own) / m + (2.0 * k * a_own_without - 2.0 * k * a_target) / (two_m * two_m);
}

/// Modularity gain of moving i into `target`. Staying (target == C(i)) is
/// defined as exactly zero.
inline double delta_q(const Graph& g, const CommunityState& s, VertexId i, CommunityId target,
                      const CommunityWeights& e_i_to) {
  detail::require_weight(g);
  const CommunityId own = s.assignment[i];
  if (target == own) return 0.0;
  const auto found = e_i_to.find(target);
  if (found == e_i_to.end()) {
    throw PreconditionError("community " + std::to_string(target) + " is not adjacent to vertex " + std::to_string(i));
  }
  const auto own_it = e_i_to.find(own);
  const double e_own = own_it == e_i_to.end() ? 0.0 : own_it->second;
  const double k = g.weighted_degree(i);
  return move_gain(found->second, e_own, k, s.a_tot[own] - k, s.a_tot[target], g.total_weight());
}

/// Moves one vertex and updates the aggregates exactly. Serial use only.
inline void apply_move(const Graph& g, CommunityState& s, VertexId i, CommunityId target) {
  const CommunityId own = s.assignment[i];
  if (target == own) return;
  if (target >= s.sizes.size()) throw PreconditionError("community id out of range");
  double e_own = 0.0;
  double e_target = 0.0;
  const auto nbrs = g.neighbors(i);
  const auto ws = g.weights(i);
  for (std::size_t x = 0; x < nbrs.size(); ++x) {
    if (nbrs[x] == i) continue;
    const CommunityId c = s.assignment[nbrs[x]];
    if (c == own) e_own += ws[x];
    if (c == target) e_target += ws[x];
  }
  const double k = g.weighted_degree(i);
  const double loop = 2.0 * g.self_loop(i);
  s.a_tot[own] -= k;
  s.w_internal[own] -= 2.0 * e_own + loop;
  if (--s.sizes[own] == 0) {
    s.a_tot[own] = 0.0;
    s.w_internal[own] = 0.0;
  }
  s.a_tot[target] += k;
  s.w_internal[target] += 2.0 * e_target + loop;
  ++s.sizes[target];
  s.assignment[i] = target;
}

/// Predicted gain when two singleton vertices i and j join `target` at the
/// same time: the two individual gains plus the interaction term between i
/// and j. Test oracle for the parallel negative-gain scenario.
inline double joint_gain_oracle(const Graph& g, const CommunityState& s, VertexId i, VertexId j,
                                CommunityId target) {
  detail::require_weight(g);
  if (i == j) throw PreconditionError("joint move needs two distinct vertices");
  const CommunityId ci = s.assignment[i];
  const CommunityId cj = s.assignment[j];
  if (s.sizes[ci] != 1 || s.sizes[cj] != 1) throw PreconditionError("joint move vertices must be singletons");
  if (ci == target || cj == target) throw PreconditionError("joint move target must differ from both sources");
  const double m = g.total_weight();
  auto single = [&](VertexId v) {
    const auto weights = community_weights(g, s, v);
    const auto it = weights.find(target);
    const double e_target = it == weights.end() ? 0.0 : it->second;
    const double k = g.weighted_degree(v);
    return move_gain(e_target, 0.0, k, s.a_tot[s.assignment[v]] - k, s.a_tot[target], m);
  };
  const double ki = g.weighted_degree(i);
  const double kj = g.weighted_degree(j);
  return single(i) + single(j) + edge_weight(g, i, j) / m - 2.0 * ki * kj / (4.0 * m * m);
}

}  // namespace louvain
