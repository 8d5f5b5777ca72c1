// Loads an edge list, detects communities and prints each vertex with its
// community, followed by the modularity of the result.
//
//   basic_usage data/karate.el

#include <iostream>

#include "louvain/louvain.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " <edge-list>\n";
    return 1;
  }
  try {
    const louvain::LoadedGraph loaded = louvain::load_graph(argv[1], louvain::GraphFormat::kEdgeList);

    louvain::RunConfig cfg;
    cfg.color_cutoff = 0;  // color even small inputs
    const louvain::Hierarchy h = louvain::run(loaded.graph, cfg);

    louvain::write_assignment(std::cout, loaded.original_ids, h.final_assignment);
    std::cout << "# Q = " << h.final_modularity << ", " << h.num_communities() << " communities, "
              << h.accepted_phases() << " phases\n";
  } catch (const louvain::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
