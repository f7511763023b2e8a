#include "cbfs/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cbfs::gen {

Graph erdos_renyi(std::size_t n, double avg_degree, std::uint64_t seed) {
  std::vector<Graph::Arc> arcs;
  if (n >= 2 && avg_degree > 0) {
    const double p = std::min(1.0, avg_degree / static_cast<double>(n - 1));
    std::mt19937_64 rng(seed);
    // Walk the pairs (u < v) in order, jumping geometric gaps between edges.
    std::geometric_distribution<std::uint64_t> gap(p);
    const std::uint64_t total = std::uint64_t{n} * (n - 1) / 2;
    std::uint64_t idx = p >= 1.0 ? 0 : gap(rng);
    std::uint64_t u = 1, row_start = 0;  // pairs (u, v) with v < u; row u starts at u(u-1)/2
    while (idx < total) {
      while (row_start + u <= idx) {
        row_start += u;
        ++u;
      }
      arcs.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(idx - row_start));
      idx += 1 + (p >= 1.0 ? 0 : gap(rng));
    }
  }
  return Graph::from_arcs(n, std::move(arcs), true);
}

Graph preferential_attachment(std::size_t n, std::size_t edges_per_vertex, std::uint64_t seed) {
  std::vector<Graph::Arc> arcs;
  std::vector<VertexId> endpoints;  // one entry per arc end: sampling it is degree-proportional
  std::mt19937_64 rng(seed);
  const std::size_t m = std::max<std::size_t>(edges_per_vertex, 1);
  const std::size_t seed_size = std::min(n, m + 1);
  for (std::size_t u = 0; u < seed_size; ++u)
    for (std::size_t v = 0; v < u; ++v) {
      arcs.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
      endpoints.push_back(static_cast<VertexId>(u));
      endpoints.push_back(static_cast<VertexId>(v));
    }
  std::vector<VertexId> picked;
  for (std::size_t u = seed_size; u < n; ++u) {
    picked.clear();
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    while (picked.size() < m) {
      const VertexId v = endpoints[pick(rng)];
      if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
    }
    for (VertexId v : picked) {
      arcs.emplace_back(static_cast<VertexId>(u), v);
      endpoints.push_back(static_cast<VertexId>(u));
      endpoints.push_back(v);
    }
  }
  return Graph::from_arcs(n, std::move(arcs), true);
}

Graph path(std::size_t n) {
  std::vector<Graph::Arc> arcs;
  for (std::size_t v = 1; v < n; ++v) arcs.emplace_back(static_cast<VertexId>(v - 1), static_cast<VertexId>(v));
  return Graph::from_arcs(n, std::move(arcs), true);
}

Graph cycle(std::size_t n) {
  std::vector<Graph::Arc> arcs;
  for (std::size_t v = 0; v < n && n >= 3; ++v)
    arcs.emplace_back(static_cast<VertexId>(v), static_cast<VertexId>((v + 1) % n));
  return n < 3 ? path(n) : Graph::from_arcs(n, std::move(arcs), true);
}

Graph star(std::size_t n) {
  std::vector<Graph::Arc> arcs;
  for (std::size_t v = 1; v < n; ++v) arcs.emplace_back(0, static_cast<VertexId>(v));
  return Graph::from_arcs(n, std::move(arcs), true);
}

Graph grid(std::size_t rows, std::size_t cols) {
  std::vector<Graph::Arc> arcs;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) arcs.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) arcs.emplace_back(id(r, c), id(r + 1, c));
    }
  return Graph::from_arcs(rows * cols, std::move(arcs), true);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  if (!a.symmetric() || !b.symmetric()) throw UsageError("disjoint_union takes undirected graphs");
  const auto shift = static_cast<VertexId>(a.num_vertices());
  std::vector<Graph::Arc> arcs;
  for (VertexId u = 0; u < a.num_vertices(); ++u)
    for (VertexId v : a.out_neighbors(u))
      if (u < v) arcs.emplace_back(u, v);
  for (VertexId u = 0; u < b.num_vertices(); ++u)
    for (VertexId v : b.out_neighbors(u))
      if (u < v) arcs.emplace_back(u + shift, v + shift);
  return Graph::from_arcs(a.num_vertices() + b.num_vertices(), std::move(arcs), true);
}

}  // namespace cbfs::gen
