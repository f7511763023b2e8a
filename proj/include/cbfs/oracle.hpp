#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cbfs/graph.hpp"

// Ground-truth distances from a textbook queue BFS. Shares no code with the
// edge_map kernels it is used to check.
namespace cbfs::oracle {

std::vector<Distance> bfs_distances(const Graph& g, VertexId source);

// Row s holds the distances from s. Quadratic memory: small graphs only.
std::vector<std::vector<Distance>> all_pairs(const Graph& g);

// Exact distance for each pair, one BFS per distinct first endpoint.
std::vector<Distance> pair_distances(const Graph& g, std::span<const std::pair<VertexId, VertexId>> pairs);

// Component id per vertex of a symmetric graph, numbered by first vertex.
std::vector<VertexId> connected_components(const Graph& g);

}  // namespace cbfs::oracle
