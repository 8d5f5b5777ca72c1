#pragma once

// Umbrella header for the parallel Louvain community detection library.

#include "louvain/engine.hpp"
#include "louvain/eval.hpp"
#include "louvain/graph.hpp"
#include "louvain/heuristics.hpp"
#include "louvain/io.hpp"
#include "louvain/modularity.hpp"
#include "louvain/parallel.hpp"
#include "louvain/types.hpp"
