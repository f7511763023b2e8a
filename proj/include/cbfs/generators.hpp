#pragma once

#include <cstddef>
#include <cstdint>

#include "cbfs/graph.hpp"

// Seeded synthetic undirected graphs for tests and benchmarks.
namespace cbfs::gen {

// G(n, p) with p = avg_degree / (n - 1).
Graph erdos_renyi(std::size_t n, double avg_degree, std::uint64_t seed);

// Preferential attachment: each new vertex links to `edges_per_vertex`
// distinct earlier vertices chosen proportionally to degree.
Graph preferential_attachment(std::size_t n, std::size_t edges_per_vertex, std::uint64_t seed);

Graph path(std::size_t n);
Graph cycle(std::size_t n);
Graph star(std::size_t n);  // vertex 0 is the hub
Graph grid(std::size_t rows, std::size_t cols);

// b's vertices follow a's, shifted by a.num_vertices().
Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace cbfs::gen
