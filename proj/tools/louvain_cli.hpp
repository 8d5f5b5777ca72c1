#pragma once

// Command-line front end: `detect`, `compare` and `stats`.
//
// Exit codes: 0 success, 1 usage error, 2 I/O failure, 3 parse failure,
// 4 edgeless graph, 5 partitions over different vertex sets.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "louvain/louvain.hpp"

namespace louvain::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kParse = 3,
  kEdgeless = 4,
  kMismatch = 5,
};

struct DetectOptions {
  std::string input;
  std::string format = "edgelist";
  std::string output;
  std::string trace;
  int threads = -1;
  bool no_vf = false;
  bool no_coloring = false;
  RunConfig config;
};

inline std::string format_summary(const Hierarchy& h) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6f,%zu,%zu,%.6f,", h.final_modularity, h.accepted_phases(), h.total_iterations,
                h.total_millis / 1000.0);
  std::string out(buf);
  bool first = true;
  for (Stage stage : kAllStages) {
    std::snprintf(buf, sizeof buf, "%s%s=%.6f", first ? "" : ";", std::string(stage_name(stage)).c_str(),
                  h.stage_millis[static_cast<std::size_t>(stage)] / 1000.0);
    out += buf;
    first = false;
  }
  return out;
}

inline int resolve_threads(int flag) {
  if (flag >= 0) return flag;
  if (const char* env = std::getenv("GRAPH_THREADS"); env != nullptr && *env != '\0') {
    try {
      const int value = std::stoi(env);
      if (value >= 0) return value;
    } catch (const std::exception&) {
    }
    throw ParseError(std::string("GRAPH_THREADS must be a non-negative integer, got '") + env + "'", 0);
  }
  return 0;
}

inline int detect(const DetectOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg = opts.config;
  cfg.use_vf = !opts.no_vf;
  cfg.use_coloring = !opts.no_coloring;
  cfg.worker_count = resolve_threads(opts.threads);
  cfg.validate();

  LoadedGraph loaded;
  try {
    loaded = load_graph(opts.input, parse_graph_format(opts.format));
  } catch (const EmptyInputError& e) {
    throw EdgelessGraphError(std::string(e.what()) + ": modularity undefined for edgeless graph");
  }
  if (loaded.merged_duplicates > 0) {
    err << "warning: merged " << loaded.merged_duplicates << " duplicate edge records\n";
  }

  std::unique_ptr<std::ofstream> trace_file;
  std::unique_ptr<CsvTraceSink> sink;
  if (!opts.trace.empty()) {
    trace_file = std::make_unique<std::ofstream>(opts.trace);
    if (!*trace_file) throw IoError("cannot write '" + opts.trace + "'");
    sink = std::make_unique<CsvTraceSink>(*trace_file);
  }

  const Hierarchy h = run(loaded.graph, cfg, sink.get());
  if (h.hit_iteration_cap) err << "warning: a phase stopped at the iteration cap\n";
  if (h.cycled) err << "note: a phase stopped on a repeating assignment cycle\n";

  if (!opts.output.empty()) {
    std::ofstream file(opts.output);
    if (!file) throw IoError("cannot write '" + opts.output + "'");
    write_assignment(file, loaded.original_ids, h.final_assignment);
    if (!file) throw IoError("failed writing '" + opts.output + "'");
  }
  out << format_summary(h) << '\n';
  return kOk;
}

inline std::vector<std::uint64_t> read_assignment_file(const std::string& path,
                                                       std::vector<std::uint64_t>& vertices) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  const auto rows = read_assignment(in);
  vertices.clear();
  std::vector<std::uint64_t> labels;
  for (const auto& row : rows) {
    vertices.push_back(row.vertex);
    labels.push_back(row.community);
  }
  return labels;
}

inline int compare(const std::string& reference_path, const std::string& candidate_path, std::ostream& out) {
  std::vector<std::uint64_t> ref_vertices;
  std::vector<std::uint64_t> cand_vertices;
  const auto reference = read_assignment_file(reference_path, ref_vertices);
  const auto candidate = read_assignment_file(candidate_path, cand_vertices);
  if (ref_vertices != cand_vertices) {
    throw MismatchError("assignment files cover different vertex sets (" + std::to_string(ref_vertices.size()) +
                        " vs " + std::to_string(cand_vertices.size()) + " vertices)");
  }
  if (reference.size() < 2) throw PreconditionError("comparison needs at least two vertices");
  out << format_comparison(compare_partitions(reference, candidate)) << '\n';
  return kOk;
}

inline int stats(const std::string& input, const std::string& format, std::ostream& out) {
  const LoadedGraph loaded = load_graph(input, parse_graph_format(format));
  const DegreeStats s = degree_stats(loaded.graph);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%u,%llu,%zu,%.3f,%.3f", loaded.graph.num_vertices(),
                static_cast<unsigned long long>(loaded.graph.num_edges()), s.max_degree, s.avg_degree, s.rsd);
  out << buf << '\n';
  return kOk;
}

/// Parses `args` (without the program name) and runs the subcommand.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel Louvain community detection"};
  app.require_subcommand(1);

  DetectOptions detect_opts;
  auto* detect_cmd = app.add_subcommand("detect", "Detect communities and write the final assignment");
  detect_cmd->add_option("--input", detect_opts.input, "Graph file")->required();
  detect_cmd->add_option("--format", detect_opts.format, "edgelist, metis or mtx")
      ->check(CLI::IsMember({"edgelist", "metis", "mtx"}));
  detect_cmd->add_option("--output", detect_opts.output, "Assignment file: `vertex community` per line");
  detect_cmd->add_option("--trace", detect_opts.trace, "Trace CSV: phase,iteration,stage,modularity,moves,millis");
  detect_cmd->add_option("--threads", detect_opts.threads, "Worker count (falls back to GRAPH_THREADS)")
      ->check(CLI::NonNegativeNumber);
  detect_cmd->add_flag("--no-vf", detect_opts.no_vf, "Skip vertex-following preprocessing");
  detect_cmd->add_flag("--no-coloring", detect_opts.no_coloring, "Never run phases on colored input");
  detect_cmd->add_option("--theta", detect_opts.config.theta_final, "Gain threshold for uncolored phases");
  detect_cmd->add_option("--theta-color", detect_opts.config.theta_color, "Gain threshold for colored phases");
  detect_cmd->add_option("--color-cutoff", detect_opts.config.color_cutoff,
                         "Color phase inputs with at least this many vertices");
  detect_cmd->add_option("--max-iters", detect_opts.config.max_iterations_per_phase, "Iteration cap per phase");

  std::string reference_path;
  std::string candidate_path;
  auto* compare_cmd = app.add_subcommand("compare", "Pair-counting agreement of two assignment files");
  compare_cmd->add_option("reference", reference_path, "Reference assignment")->required();
  compare_cmd->add_option("candidate", candidate_path, "Candidate assignment")->required();

  std::string stats_input;
  std::string stats_format = "edgelist";
  auto* stats_cmd = app.add_subcommand("stats", "Print n,M,max_degree,avg_degree,rsd");
  stats_cmd->add_option("--input", stats_input, "Graph file")->required();
  stats_cmd->add_option("--format", stats_format, "edgelist, metis or mtx")
      ->check(CLI::IsMember({"edgelist", "metis", "mtx"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*detect_cmd) return detect(detect_opts, out, err);
    if (*compare_cmd) return compare(reference_path, candidate_path, out);
    if (*stats_cmd) return stats(stats_input, stats_format, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const EdgelessGraphError& e) {
    err << "error: " << e.what() << '\n';
    return kEdgeless;
  } catch (const MismatchError& e) {
    err << "error: " << e.what() << '\n';
    return kMismatch;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace louvain::cli
