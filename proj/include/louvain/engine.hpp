#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "louvain/graph.hpp"
#include "louvain/heuristics.hpp"
#include "louvain/modularity.hpp"
#include "louvain/parallel.hpp"
#include "louvain/types.hpp"

namespace louvain {

struct RunConfig {
  /// Relative modularity gain below which an uncolored phase ends.
  double theta_final = 1e-6;
  /// Threshold used while phases run on colored input.
  double theta_color = 1e-2;
  /// Coloring is only applied to phase inputs with at least this many vertices.
  VertexId color_cutoff = 100'000;
  bool use_vf = true;
  bool use_coloring = true;
  std::size_t max_iterations_per_phase = 10'000;
  /// 0 selects the runtime default.
  int worker_count = 0;

  void validate() const {
    if (!(theta_final > 0.0) || !(theta_color > 0.0)) throw PreconditionError("thresholds must be positive");
    if (theta_color < theta_final) throw PreconditionError("theta_color must not be below theta_final");
    if (max_iterations_per_phase == 0) throw PreconditionError("max_iterations_per_phase must be positive");
    if (worker_count < 0) throw PreconditionError("worker_count must not be negative");
  }
};

enum class Stage { kColoring, kClustering, kRebuild, kVf };

inline constexpr std::array<Stage, 4> kAllStages{Stage::kColoring, Stage::kClustering, Stage::kRebuild, Stage::kVf};

inline std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::kColoring:
      return "coloring";
    case Stage::kClustering:
      return "clustering";
    case Stage::kRebuild:
      return "rebuild";
    case Stage::kVf:
      return "vf";
  }
  return "unknown";
}

/// One timed step of a run. Clustering records are per iteration; the other
/// stages emit one record per invocation with iteration 0.
struct TraceRecord {
  std::size_t phase = 0;
  std::size_t iteration = 0;
  Stage stage = Stage::kClustering;
  double modularity = 0.0;
  /// Vertices moved (clustering), vertices merged (vf), colors used
  /// (coloring), meta-vertices produced (rebuild).
  std::size_t moves = 0;
  double millis = 0.0;
  /// Whether the phase runs on colored input.
  bool colored = false;
  /// Termination threshold in force for the phase.
  double theta = 0.0;
};

/// Receives trace records as a run progresses.
class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void record(const TraceRecord& rec) = 0;
  /// Called after every clustering iteration with the live state.
  virtual void on_iteration(const Graph& /*g*/, const CommunityState& /*s*/, const TraceRecord& /*rec*/) {}
};

/// Keeps every record in memory.
class TraceLog : public TraceSink {
 public:
  void record(const TraceRecord& rec) override { records_.push_back(rec); }
  const std::vector<TraceRecord>& records() const noexcept { return records_; }

 private:
  std::vector<TraceRecord> records_;
};

inline void write_trace_header(std::ostream& out) { out << "phase,iteration,stage,modularity,moves,millis\n"; }

inline void write_trace_row(std::ostream& out, const TraceRecord& rec) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu,%zu,%s,%.12f,%zu,%.3f\n", rec.phase, rec.iteration,
                std::string(stage_name(rec.stage)).c_str(), rec.modularity, rec.moves, rec.millis);
  out << buf;
}

/// Streams records as CSV rows.
class CsvTraceSink : public TraceSink {
 public:
  explicit CsvTraceSink(std::ostream& out) : out_(out) { write_trace_header(out_); }
  void record(const TraceRecord& rec) override { write_trace_row(out_, rec); }

 private:
  std::ostream& out_;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

inline void emit(TraceSink* sink, const TraceRecord& rec) {
  if (sink != nullptr) sink->record(rec);
}

}  // namespace detail

/// Scratch buffers reused across iterations of one phase.
class IterationWorkspace {
 public:
  IterationWorkspace(VertexId n, int workers)
      : workers_(resolve_workers(workers)),
        pending_(n, kInvalidCommunity),
        weights_(static_cast<std::size_t>(workers_), std::vector<Weight>(n, 0.0)),
        touched_(static_cast<std::size_t>(workers_)) {}

  int workers() const noexcept { return workers_; }

 private:
  friend std::size_t run_iteration(const Graph&, CommunityState&, std::span<const VertexId>, IterationWorkspace&);

  int workers_;
  std::vector<CommunityId> pending_;
  std::vector<std::vector<Weight>> weights_;
  std::vector<std::vector<CommunityId>> touched_;
  std::vector<CommunityId> decision_;
  std::vector<std::size_t> moved_;
  std::vector<Weight> loss_;
  std::vector<Weight> gain_;
};

/// One decision sweep over `vertices` followed by applying the moves.
///
/// Every decision reads the state as it was when the sweep started. A vertex
/// picks the neighboring community of maximal gain, preferring the smallest
/// label on ties, and moves only for a strictly positive gain. A singleton
/// never joins another singleton with a larger label. Aggregates are then
/// updated exactly, accounting for neighbors that moved in the same sweep.
/// Returns the number of vertices that moved.
inline std::size_t run_iteration(const Graph& g, CommunityState& s, std::span<const VertexId> vertices,
                                 IterationWorkspace& ws) {
  const double m = g.total_weight();
  ws.decision_.resize(vertices.size());

  parallel_for(vertices.size(), ws.workers_, [&](std::size_t idx) {
    const VertexId i = vertices[idx];
    const CommunityId own = s.assignment[i];
    const auto worker = static_cast<std::size_t>(current_worker_index());
    auto& e = ws.weights_[worker];
    auto& touched = ws.touched_[worker];
    const auto nbrs = g.neighbors(i);
    const auto wts = g.weights(i);
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      if (nbrs[x] == i) continue;
      const CommunityId c = s.assignment[nbrs[x]];
      if (e[c] == 0.0) touched.push_back(c);
      e[c] += wts[x];
    }
    const double k = g.weighted_degree(i);
    const double e_own = e[own];
    const double a_own_without = s.a_tot[own] - k;
    CommunityId best = own;
    double best_gain = 0.0;
    for (CommunityId c : touched) {
      if (c == own) continue;
      const double gain = move_gain(e[c], e_own, k, a_own_without, s.a_tot[c], m);
      if (gain > best_gain || (gain == best_gain && CommunityState::label(c) < CommunityState::label(best))) {
        best_gain = gain;
        best = c;
      }
    }
    for (CommunityId c : touched) e[c] = 0.0;
    touched.clear();

    if (!(best_gain > 0.0) || best == own) {
      best = own;
    } else if (s.sizes[own] == 1 && s.sizes[best] == 1 && CommunityState::label(best) > CommunityState::label(own)) {
      best = own;
    }
    ws.decision_[idx] = best;
  });

  ws.moved_.clear();
  for (std::size_t idx = 0; idx < vertices.size(); ++idx) {
    if (ws.decision_[idx] != s.assignment[vertices[idx]]) {
      ws.moved_.push_back(idx);
      ws.pending_[vertices[idx]] = ws.decision_[idx];
    }
  }
  const std::size_t moves = ws.moved_.size();
  if (moves == 0) return 0;

  // Change of internal weight on each mover's source and target community,
  // evaluated against the post-sweep assignment. An edge between two movers
  // is charged to its lower endpoint.
  ws.loss_.assign(moves, 0.0);
  ws.gain_.assign(moves, 0.0);
  parallel_for(moves, ws.workers_, [&](std::size_t slot) {
    const VertexId i = vertices[ws.moved_[slot]];
    const CommunityId old_i = s.assignment[i];
    const CommunityId new_i = ws.pending_[i];
    double loss = 0.0;
    double gain = 0.0;
    const auto nbrs = g.neighbors(i);
    const auto wts = g.weights(i);
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      const VertexId j = nbrs[x];
      const double w2 = 2.0 * wts[x];
      if (j == i) {
        loss += w2;
        gain += w2;
        continue;
      }
      const bool j_moved = ws.pending_[j] != kInvalidCommunity;
      if (j_moved && j < i) continue;
      const CommunityId old_j = s.assignment[j];
      const CommunityId new_j = j_moved ? ws.pending_[j] : old_j;
      if (old_i == old_j) loss += w2;
      if (new_i == new_j) gain += w2;
    }
    ws.loss_[slot] = loss;
    ws.gain_[slot] = gain;
  });

  // Applied in vertex order so the floating-point sums never depend on the
  // worker count.
  for (std::size_t slot = 0; slot < moves; ++slot) {
    const VertexId i = vertices[ws.moved_[slot]];
    const CommunityId old_c = s.assignment[i];
    const CommunityId new_c = ws.pending_[i];
    const double k = g.weighted_degree(i);
    s.a_tot[old_c] -= k;
    s.w_internal[old_c] -= ws.loss_[slot];
    --s.sizes[old_c];
    s.a_tot[new_c] += k;
    s.w_internal[new_c] += ws.gain_[slot];
    ++s.sizes[new_c];
  }
  for (std::size_t slot = 0; slot < moves; ++slot) {
    const VertexId i = vertices[ws.moved_[slot]];
    const CommunityId old_c = s.assignment[i];
    if (s.sizes[old_c] == 0) {
      s.a_tot[old_c] = 0.0;
      s.w_internal[old_c] = 0.0;
    }
  }
  for (std::size_t slot = 0; slot < moves; ++slot) {
    const VertexId i = vertices[ws.moved_[slot]];
    s.assignment[i] = ws.pending_[i];
    ws.pending_[i] = kInvalidCommunity;
  }
  return moves;
}

/// Convenience overload that allocates its own workspace.
inline std::size_t run_iteration(const Graph& g, CommunityState& s, std::span<const VertexId> vertices,
                                 int workers = 0) {
  IterationWorkspace ws(g.num_vertices(), workers);
  return run_iteration(g, s, vertices, ws);
}

struct PhaseResult {
  CommunityState state;
  std::size_t iterations = 0;
  std::size_t moves = 0;
  /// Q of the singleton start state.
  double initial_modularity = 0.0;
  double final_modularity = 0.0;
  bool hit_iteration_cap = false;
  /// The sweep revisited an earlier assignment; the best state seen was kept.
  bool cycled = false;
  bool colored = false;
  double theta = 0.0;
  double millis = 0.0;
};

inline std::size_t assignment_hash(const std::vector<CommunityId>& assignment) {
  return std::hash<std::string_view>{}(std::string_view(reinterpret_cast<const char*>(assignment.data()),
                                                        assignment.size() * sizeof(CommunityId)));
}

/// True once a change from `previous` to `current` is below `theta`,
/// relative to |previous|, or absolute when previous is (nearly) zero.
inline bool below_threshold(double current, double previous, double theta) {
  const double diff = std::abs(current - previous);
  const double denom = std::abs(previous);
  return denom < 1e-15 ? diff < theta : diff / denom < theta;
}

/// Runs one phase from singletons until the iteration-to-iteration gain
/// drops below the active threshold, a sweep moves nothing, or the
/// iteration cap is reached. With a coloring, one iteration visits the
/// color classes in ascending color order.
///
/// Simultaneous decisions can make a group of vertices flip back and forth
/// forever. When an iteration reproduces an assignment already seen in this
/// phase, the phase stops and returns the best state it has visited.
inline PhaseResult run_phase(const Graph& g, const RunConfig& cfg, const Coloring* coloring, TraceSink* trace,
                             std::size_t phase_index = 0) {
  detail::require_weight(g);
  const auto start = detail::Clock::now();
  PhaseResult out;
  out.colored = coloring != nullptr;
  out.theta = out.colored ? cfg.theta_color : cfg.theta_final;
  out.state = singleton_state(g);
  out.initial_modularity = modularity(g, out.state);
  out.final_modularity = out.initial_modularity;

  std::vector<std::vector<VertexId>> groups;
  if (coloring != nullptr) {
    groups = coloring->classes();
  } else {
    groups.emplace_back(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) groups[0][v] = v;
  }

  IterationWorkspace ws(g.num_vertices(), cfg.worker_count);
  double previous = -std::numeric_limits<double>::infinity();
  // Every assignment reached so far, by hash; the sweep is deterministic, so
  // reaching one again means it will loop forever.
  std::unordered_set<std::size_t> seen{assignment_hash(out.state.assignment)};
  CommunityState best = out.state;
  double best_q = out.initial_modularity;
  while (true) {
    const auto iter_start = detail::Clock::now();
    std::size_t moves = 0;
    for (const auto& group : groups) moves += run_iteration(g, out.state, group, ws);
    double current = modularity(g, out.state);
    if (moves > 0 && !seen.insert(assignment_hash(out.state.assignment)).second) {
      out.cycled = true;
      if (best_q > current) {
        out.state = std::move(best);
        current = best_q;
      }
    } else if (current > best_q) {
      best = out.state;
      best_q = current;
    }
    ++out.iterations;
    out.moves += moves;
    out.final_modularity = current;

    TraceRecord rec;
    rec.phase = phase_index;
    rec.iteration = out.iterations;
    rec.stage = Stage::kClustering;
    rec.modularity = current;
    rec.moves = moves;
    rec.millis = detail::millis_since(iter_start);
    rec.colored = out.colored;
    rec.theta = out.theta;
    if (trace != nullptr) {
      trace->record(rec);
      trace->on_iteration(g, out.state, rec);
    }

    if (moves == 0 || out.cycled) break;
    if (std::isfinite(previous) && below_threshold(current, previous, out.theta)) break;
    previous = current;
    if (out.iterations >= cfg.max_iterations_per_phase) {
      out.hit_iteration_cap = true;
      break;
    }
  }
  out.millis = detail::millis_since(start);
  return out;
}

struct RebuildResult {
  Graph graph;
  /// old community id -> new vertex id, kInvalidVertex for empty communities.
  std::vector<VertexId> community_to_vertex;
};

/// Collapses every non-empty community into one vertex. New ids follow the
/// ascending order of community labels. A meta-vertex carries the summed
/// intra-community weight (each edge once) as its self loop; meta-edges
/// carry the summed weight of the inter-community edges they replace.
inline RebuildResult rebuild(const Graph& g, const CommunityState& s, int workers = 0) {
  const VertexId n = g.num_vertices();
  RebuildResult out;
  out.community_to_vertex.assign(s.sizes.size(), kInvalidVertex);
  VertexId count = 0;
  for (std::size_t c = 0; c < s.sizes.size(); ++c) {
    if (s.sizes[c] > 0) out.community_to_vertex[c] = count++;
  }

  std::vector<std::size_t> member_offset(count + 1, 0);
  for (VertexId v = 0; v < n; ++v) ++member_offset[out.community_to_vertex[s.assignment[v]] + 1];
  for (VertexId c = 0; c < count; ++c) member_offset[c + 1] += member_offset[c];
  std::vector<VertexId> members(n);
  {
    std::vector<std::size_t> cursor(member_offset.begin(), member_offset.end() - 1);
    for (VertexId v = 0; v < n; ++v) members[cursor[out.community_to_vertex[s.assignment[v]]]++] = v;
  }

  const int threads = resolve_workers(workers);
  std::vector<std::vector<Weight>> scratch(static_cast<std::size_t>(threads));
  std::vector<std::vector<VertexId>> touched(static_cast<std::size_t>(threads));
  std::vector<std::vector<Edge>> rows(count);
  parallel_for(count, threads, [&](std::size_t idx) {
    const auto meta = static_cast<VertexId>(idx);
    const auto worker = static_cast<std::size_t>(current_worker_index());
    auto& acc = scratch[worker];
    auto& seen = touched[worker];
    if (acc.size() < count) acc.assign(count, 0.0);
    double loop = 0.0;
    for (std::size_t x = member_offset[meta]; x < member_offset[meta + 1]; ++x) {
      const VertexId i = members[x];
      const auto nbrs = g.neighbors(i);
      const auto wts = g.weights(i);
      for (std::size_t y = 0; y < nbrs.size(); ++y) {
        const VertexId j = nbrs[y];
        const VertexId other = out.community_to_vertex[s.assignment[j]];
        if (other == meta) {
          if (j >= i) loop += wts[y];
        } else if (other > meta) {
          if (acc[other] == 0.0) seen.push_back(other);
          acc[other] += wts[y];
        }
      }
    }
    std::sort(seen.begin(), seen.end());
    auto& row = rows[meta];
    if (loop > 0.0) row.push_back({meta, meta, loop});
    for (VertexId other : seen) {
      row.push_back({meta, other, acc[other]});
      acc[other] = 0.0;
    }
    seen.clear();
  });

  std::vector<Edge> edges;
  for (auto& row : rows) edges.insert(edges.end(), row.begin(), row.end());
  out.graph = Graph::from_canonical_edges(count, edges);
  return out;
}

struct PhaseSummary {
  std::size_t index = 0;
  VertexId num_vertices = 0;
  bool colored = false;
  std::uint32_t num_colors = 0;
  double theta = 0.0;
  std::size_t iterations = 0;
  std::size_t moves = 0;
  double initial_modularity = 0.0;
  double final_modularity = 0.0;
  bool accepted = false;
  bool hit_iteration_cap = false;
  bool cycled = false;
};

/// Output of a full multi-phase run.
struct Hierarchy {
  std::optional<VfMapping> vf;
  /// levels[p][v]: vertex v of phase p's input -> vertex of phase p+1's input.
  std::vector<std::vector<VertexId>> levels;
  /// Final community of every original vertex, dense from 0.
  std::vector<CommunityId> final_assignment;
  double final_modularity = 0.0;
  std::vector<PhaseSummary> phases;
  std::size_t total_iterations = 0;
  bool hit_iteration_cap = false;
  /// Some phase stopped on a revisited assignment.
  bool cycled = false;
  /// Wall time per stage in milliseconds, indexed by Stage.
  std::array<double, 4> stage_millis{};
  double total_millis = 0.0;

  std::size_t accepted_phases() const noexcept { return levels.size(); }

  std::size_t num_communities() const noexcept {
    CommunityId top = 0;
    for (CommunityId c : final_assignment) top = std::max(top, c + 1);
    return top;
  }

  /// Composes the VF map and every level map.
  std::vector<CommunityId> flatten(VertexId original_vertices) const {
    std::vector<CommunityId> out(original_vertices);
    for (VertexId v = 0; v < original_vertices; ++v) {
      VertexId x = vf ? vf->map[v] : v;
      for (const auto& level : levels) x = level[x];
      out[v] = x;
    }
    return out;
  }
};

/// Multi-phase driver: optional vertex following, colored phases while the
/// input is large and gains are high, then uncolored phases until the
/// phase-to-phase gain drops below theta_final. A phase that moves nothing
/// or fails to raise Q is discarded; a discarded colored phase switches
/// coloring off and the same graph is retried uncolored.
inline Hierarchy run(const Graph& g, const RunConfig& cfg, TraceSink* trace = nullptr) {
  cfg.validate();
  detail::require_weight(g);
  const auto run_start = detail::Clock::now();
  const int workers = resolve_workers(cfg.worker_count);
  Hierarchy h;

  Graph current;
  if (cfg.use_vf) {
    const auto start = detail::Clock::now();
    h.vf = vf_compact(g, workers);
    current = h.vf->compacted;
    TraceRecord rec;
    rec.stage = Stage::kVf;
    rec.modularity = modularity(current, singleton_state(current));
    rec.moves = h.vf->merged;
    rec.millis = detail::millis_since(start);
    h.stage_millis[static_cast<std::size_t>(Stage::kVf)] += rec.millis;
    detail::emit(trace, rec);
  } else {
    current = g;
  }

  double previous = modularity(current, singleton_state(current));
  bool coloring_active = cfg.use_coloring;
  std::size_t phase_index = 0;
  while (true) {
    ++phase_index;
    PhaseSummary summary;
    summary.index = phase_index;
    summary.num_vertices = current.num_vertices();
    summary.colored = coloring_active && current.num_vertices() >= cfg.color_cutoff;

    std::optional<Coloring> coloring;
    if (summary.colored) {
      const auto start = detail::Clock::now();
      coloring = color_graph(current, workers);
      summary.num_colors = coloring->num_colors;
      TraceRecord rec;
      rec.phase = phase_index;
      rec.stage = Stage::kColoring;
      rec.modularity = previous;
      rec.moves = coloring->num_colors;
      rec.millis = detail::millis_since(start);
      rec.colored = true;
      rec.theta = cfg.theta_color;
      h.stage_millis[static_cast<std::size_t>(Stage::kColoring)] += rec.millis;
      detail::emit(trace, rec);
    }

    PhaseResult phase = run_phase(current, cfg, coloring ? &*coloring : nullptr, trace, phase_index);
    h.stage_millis[static_cast<std::size_t>(Stage::kClustering)] += phase.millis;
    h.total_iterations += phase.iterations;
    h.hit_iteration_cap = h.hit_iteration_cap || phase.hit_iteration_cap;
    summary.theta = phase.theta;
    summary.iterations = phase.iterations;
    summary.moves = phase.moves;
    summary.initial_modularity = phase.initial_modularity;
    summary.final_modularity = phase.final_modularity;
    summary.hit_iteration_cap = phase.hit_iteration_cap;
    summary.cycled = phase.cycled;
    h.cycled = h.cycled || phase.cycled;
    summary.accepted = phase.moves > 0 && phase.final_modularity > previous;
    h.phases.push_back(summary);

    if (!summary.accepted) {
      if (summary.colored) {
        coloring_active = false;
        continue;
      }
      break;
    }

    const auto start = detail::Clock::now();
    RebuildResult rebuilt = rebuild(current, phase.state, workers);
    std::vector<VertexId> level(current.num_vertices());
    for (VertexId v = 0; v < current.num_vertices(); ++v) {
      level[v] = rebuilt.community_to_vertex[phase.state.assignment[v]];
    }
    h.levels.push_back(std::move(level));
    current = std::move(rebuilt.graph);
    TraceRecord rec;
    rec.phase = phase_index;
    rec.stage = Stage::kRebuild;
    rec.modularity = phase.final_modularity;
    rec.moves = current.num_vertices();
    rec.millis = detail::millis_since(start);
    rec.colored = summary.colored;
    rec.theta = summary.theta;
    h.stage_millis[static_cast<std::size_t>(Stage::kRebuild)] += rec.millis;
    detail::emit(trace, rec);

    const double before = previous;
    previous = phase.final_modularity;
    if (summary.colored) {
      if (below_threshold(previous, before, cfg.theta_color)) coloring_active = false;
    } else if (below_threshold(previous, before, cfg.theta_final)) {
      break;
    }
  }

  h.final_assignment = h.flatten(g.num_vertices());
  h.final_modularity = modularity_from_scratch(g, h.final_assignment);
  h.total_millis = detail::millis_since(run_start);
  return h;
}

}  // namespace louvain
