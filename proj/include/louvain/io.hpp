#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "louvain/graph.hpp"
#include "louvain/types.hpp"

namespace louvain {

enum class GraphFormat { kEdgeList, kMetis, kMatrixMarket };

/// The input held no graph records at all.
class EmptyInputError : public EdgelessGraphError {
 public:
  EmptyInputError() : EdgelessGraphError("empty file") {}
};

inline GraphFormat parse_graph_format(std::string_view name) {
  if (name == "edgelist" || name == "el" || name == "edge-list") return GraphFormat::kEdgeList;
  if (name == "metis" || name == "graph") return GraphFormat::kMetis;
  if (name == "mtx" || name == "matrix-market") return GraphFormat::kMatrixMarket;
  throw ParseError("unknown graph format '" + std::string(name) + "'", 0);
}

/// A parsed graph together with the ids the input file used for its vertices.
struct LoadedGraph {
  Graph graph;
  /// original_ids[v] is the id written in the file for internal vertex v
  /// (edge lists), or v itself for formats with positional ids.
  std::vector<std::uint64_t> original_ids;
  /// Records folded into an earlier record with the same endpoints.
  std::size_t merged_duplicates = 0;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::uint64_t parse_id(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected a non-negative integer, got '" + std::string(token) + "'", line);
  }
  return value;
}

inline Weight parse_weight(std::string_view token, std::size_t line) {
  Weight value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected a weight, got '" + std::string(token) + "'", line);
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParseError("edge weight must be positive, got '" + std::string(token) + "'", line);
  }
  return value;
}

struct DirectedEntry {
  VertexId from;
  VertexId to;
  Weight weight;
};

// Folds a list that may carry each undirected edge once per direction into
// canonical edge records. A pair seen in both directions keeps the forward
// weight; mismatching mirrored weights are rejected.
inline std::vector<Edge> symmetrize(std::vector<DirectedEntry> entries, std::size_t& merged) {
  std::stable_sort(entries.begin(), entries.end(), [](const DirectedEntry& a, const DirectedEntry& b) {
    const auto ka = std::minmax(a.from, a.to);
    const auto kb = std::minmax(b.from, b.to);
    return ka < kb;
  });
  std::vector<Edge> out;
  std::size_t i = 0;
  while (i < entries.size()) {
    const auto key = std::minmax(entries[i].from, entries[i].to);
    Weight forward = 0.0;
    Weight backward = 0.0;
    std::size_t n_forward = 0;
    std::size_t n_backward = 0;
    for (; i < entries.size() && std::minmax(entries[i].from, entries[i].to) == key; ++i) {
      if (entries[i].from <= entries[i].to) {
        forward += entries[i].weight;
        ++n_forward;
      } else {
        backward += entries[i].weight;
        ++n_backward;
      }
    }
    if (n_forward > 1) merged += n_forward - 1;
    if (n_backward > 1) merged += n_backward - 1;
    Weight w = n_forward > 0 ? forward : backward;
    if (n_forward > 0 && n_backward > 0 && std::abs(forward - backward) > 1e-12 * std::max(forward, backward)) {
      throw ParseError("asymmetric weights for edge (" + std::to_string(key.first) + ", " +
                           std::to_string(key.second) + ")",
                       0);
    }
    out.push_back({key.first, key.second, w});
  }
  return out;
}

inline std::string_view strip_comment(std::string_view line, char marker) {
  const auto pos = line.find(marker);
  return pos == std::string_view::npos ? line : line.substr(0, pos);
}

}  // namespace detail

/// Reads `u v [w]` records. Vertex ids become dense in first-appearance order.
inline LoadedGraph read_edge_list(std::istream& in) {
  LoadedGraph out;
  std::unordered_map<std::uint64_t, VertexId> dense;
  std::vector<Edge> edges;
  auto intern = [&](std::uint64_t id) {
    auto [it, inserted] = dense.try_emplace(id, static_cast<VertexId>(out.original_ids.size()));
    if (inserted) out.original_ids.push_back(id);
    return it->second;
  };
  std::string buffer;
  std::size_t line_no = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    const auto tokens = detail::split_ws(detail::strip_comment(buffer, '#'));
    if (tokens.empty()) continue;
    if (tokens.size() != 2 && tokens.size() != 3) {
      throw ParseError("expected 'u v [w]', got " + std::to_string(tokens.size()) + " fields", line_no);
    }
    const auto u = detail::parse_id(tokens[0], line_no);
    const auto v = detail::parse_id(tokens[1], line_no);
    const Weight w = tokens.size() == 3 ? detail::parse_weight(tokens[2], line_no) : 1.0;
    const VertexId du = intern(u);
    const VertexId dv = intern(v);
    edges.push_back({du, dv, w});
  }
  if (edges.empty()) throw EmptyInputError();
  out.graph = Graph::from_edges(static_cast<VertexId>(out.original_ids.size()), std::move(edges), &out.merged_duplicates);
  return out;
}

/// Reads a METIS graph: header `n M [fmt [ncon]]`, then one line of 1-based
/// neighbors per vertex. Ids are shifted to 0-based.
inline LoadedGraph read_metis(std::istream& in) {
  std::string buffer;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t declared_edges = 0;
  bool edge_weights = false;
  bool vertex_sizes = false;
  std::size_t vertex_weights = 0;

  while (!have_header && std::getline(in, buffer)) {
    ++line_no;
    if (!buffer.empty() && buffer[0] == '%') continue;
    const auto tokens = detail::split_ws(buffer);
    if (tokens.empty()) continue;
    if (tokens.size() < 2 || tokens.size() > 4) throw ParseError("expected header 'n M [fmt [ncon]]'", line_no);
    n = detail::parse_id(tokens[0], line_no);
    declared_edges = detail::parse_id(tokens[1], line_no);
    if (tokens.size() >= 3) {
      std::string fmt(tokens[2]);
      if (fmt.size() > 3 || fmt.find_first_not_of("01") != std::string::npos) {
        throw ParseError("invalid fmt field '" + fmt + "'", line_no);
      }
      fmt.insert(0, 3 - fmt.size(), '0');
      vertex_sizes = fmt[0] == '1';
      vertex_weights = fmt[1] == '1' ? 1 : 0;
      edge_weights = fmt[2] == '1';
    }
    if (tokens.size() == 4) {
      vertex_weights = static_cast<std::size_t>(detail::parse_id(tokens[3], line_no));
    }
    if (n >= kInvalidVertex) throw ParseError("too many vertices", line_no);
    have_header = true;
  }
  if (!have_header) throw EmptyInputError();

  std::vector<detail::DirectedEntry> entries;
  entries.reserve(2 * declared_edges);
  std::uint64_t vertex = 0;
  while (vertex < n && std::getline(in, buffer)) {
    ++line_no;
    if (!buffer.empty() && buffer[0] == '%') continue;
    const auto tokens = detail::split_ws(buffer);
    std::size_t t = (vertex_sizes ? 1 : 0) + vertex_weights;
    if (tokens.size() < t) throw ParseError("missing vertex size or weight fields", line_no);
    const std::size_t stride = edge_weights ? 2 : 1;
    if ((tokens.size() - t) % stride != 0) throw ParseError("neighbor without a weight", line_no);
    for (; t < tokens.size(); t += stride) {
      const auto nbr = detail::parse_id(tokens[t], line_no);
      if (nbr < 1 || nbr > n) throw ParseError("neighbor id " + std::to_string(nbr) + " out of range", line_no);
      const Weight w = edge_weights ? detail::parse_weight(tokens[t + 1], line_no) : 1.0;
      entries.push_back({static_cast<VertexId>(vertex), static_cast<VertexId>(nbr - 1), w});
    }
    ++vertex;
  }
  if (vertex < n) {
    throw ParseError("expected " + std::to_string(n) + " vertex lines, found " + std::to_string(vertex), line_no);
  }

  LoadedGraph out;
  auto edges = detail::symmetrize(std::move(entries), out.merged_duplicates);
  out.graph = Graph::from_canonical_edges(static_cast<VertexId>(n), edges);
  out.original_ids.resize(n);
  for (std::uint64_t v = 0; v < n; ++v) out.original_ids[v] = v;
  return out;
}

/// Reads a Matrix Market coordinate matrix as an undirected graph. Symmetric
/// files may list either triangle; general files are folded by mirroring.
inline LoadedGraph read_matrix_market(std::istream& in) {
  std::string buffer;
  std::size_t line_no = 0;
  if (!std::getline(in, buffer)) throw EmptyInputError();
  ++line_no;
  const auto banner = detail::split_ws(buffer);
  auto lower = [](std::string_view s) {
    std::string r(s);
    std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return r;
  };
  if (banner.size() != 5 || banner[0] != "%%MatrixMarket" || lower(banner[1]) != "matrix" ||
      lower(banner[2]) != "coordinate") {
    throw ParseError("expected '%%MatrixMarket matrix coordinate <field> <symmetry>'", line_no);
  }
  const std::string field = lower(banner[3]);
  const std::string symmetry = lower(banner[4]);
  if (field != "real" && field != "integer" && field != "pattern") {
    throw ParseError("unsupported field '" + field + "'", line_no);
  }
  if (symmetry != "symmetric" && symmetry != "general") {
    throw ParseError("unsupported symmetry '" + symmetry + "'", line_no);
  }
  const bool pattern = field == "pattern";

  std::uint64_t rows = 0;
  std::uint64_t nnz = 0;
  bool have_size = false;
  std::vector<detail::DirectedEntry> entries;
  std::uint64_t seen = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    if (!buffer.empty() && buffer[0] == '%') continue;
    const auto tokens = detail::split_ws(buffer);
    if (tokens.empty()) continue;
    if (!have_size) {
      if (tokens.size() != 3) throw ParseError("expected size line 'rows cols nnz'", line_no);
      rows = detail::parse_id(tokens[0], line_no);
      const auto cols = detail::parse_id(tokens[1], line_no);
      nnz = detail::parse_id(tokens[2], line_no);
      if (rows != cols) throw ParseError("adjacency matrix must be square", line_no);
      if (rows >= kInvalidVertex) throw ParseError("too many vertices", line_no);
      entries.reserve(nnz);
      have_size = true;
      continue;
    }
    if (tokens.size() != (pattern ? 2u : 3u)) throw ParseError("malformed matrix entry", line_no);
    const auto i = detail::parse_id(tokens[0], line_no);
    const auto j = detail::parse_id(tokens[1], line_no);
    if (i < 1 || i > rows || j < 1 || j > rows) throw ParseError("matrix index out of range", line_no);
    const Weight w = pattern ? 1.0 : detail::parse_weight(tokens[2], line_no);
    entries.push_back({static_cast<VertexId>(i - 1), static_cast<VertexId>(j - 1), w});
    ++seen;
  }
  if (!have_size) throw EmptyInputError();
  if (seen != nnz) {
    throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(seen), line_no);
  }

  LoadedGraph out;
  if (symmetry == "symmetric") {
    std::vector<Edge> edges;
    edges.reserve(entries.size());
    for (const auto& e : entries) edges.push_back({e.from, e.to, e.weight});
    out.graph = Graph::from_edges(static_cast<VertexId>(rows), std::move(edges), &out.merged_duplicates);
  } else {
    auto edges = detail::symmetrize(std::move(entries), out.merged_duplicates);
    out.graph = Graph::from_canonical_edges(static_cast<VertexId>(rows), edges);
  }
  out.original_ids.resize(rows);
  for (std::uint64_t v = 0; v < rows; ++v) out.original_ids[v] = v;
  return out;
}

inline LoadedGraph read_graph(std::istream& in, GraphFormat format) {
  switch (format) {
    case GraphFormat::kEdgeList:
      return read_edge_list(in);
    case GraphFormat::kMetis:
      return read_metis(in);
    case GraphFormat::kMatrixMarket:
      return read_matrix_market(in);
  }
  throw Error("unreachable graph format");
}

inline LoadedGraph load_graph(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_graph(in, format);
}

/// Writes one `u v w` line per canonical edge, weights at full precision.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  char buf[64];
  for (const Edge& e : g.edges()) {
    std::snprintf(buf, sizeof buf, "%u %u %.17g\n", e.u, e.v, e.weight);
    out << buf;
  }
}

/// One `(vertex id, community id)` line of an assignment file.
struct AssignmentEntry {
  std::uint64_t vertex = 0;
  std::uint64_t community = 0;
};

inline void write_assignment(std::ostream& out, std::span<const std::uint64_t> original_ids,
                             std::span<const CommunityId> assignment) {
  if (original_ids.size() != assignment.size()) throw PreconditionError("assignment and id list differ in length");
  std::vector<std::pair<std::uint64_t, CommunityId>> rows;
  rows.reserve(assignment.size());
  for (std::size_t v = 0; v < assignment.size(); ++v) rows.emplace_back(original_ids[v], assignment[v]);
  std::sort(rows.begin(), rows.end());
  for (const auto& [id, c] : rows) out << id << ' ' << c << '\n';
}

/// Reads `vertex community` lines; the result is sorted by vertex id.
inline std::vector<AssignmentEntry> read_assignment(std::istream& in) {
  std::vector<AssignmentEntry> rows;
  std::string buffer;
  std::size_t line_no = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    const auto tokens = detail::split_ws(detail::strip_comment(buffer, '#'));
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError("expected 'vertex community'", line_no);
    rows.push_back({detail::parse_id(tokens[0], line_no), detail::parse_id(tokens[1], line_no)});
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.vertex < b.vertex; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].vertex == rows[i - 1].vertex) {
      throw ParseError("vertex " + std::to_string(rows[i].vertex) + " assigned twice", 0);
    }
  }
  return rows;
}

}  // namespace louvain
