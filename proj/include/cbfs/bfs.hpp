#pragma once

#include <vector>

#include "cbfs/edge_map.hpp"
#include "cbfs/graph.hpp"

namespace cbfs {

// Frontier-synchronous parallel BFS built on edge_map; a vertex joins the next
// frontier through the compare-and-swap that first lowers its distance.
std::vector<Distance> plain_bfs(const Graph& g, VertexId source, const EdgeMapOptions& opts = {});

}  // namespace cbfs
