#include "cbfs/bfs.hpp"

#include <atomic>

namespace cbfs {

const char* to_string(EdgeMapMode mode) {
  switch (mode) {
    case EdgeMapMode::kAuto: return "auto";
    case EdgeMapMode::kSparse: return "sparse";
    case EdgeMapMode::kDense: return "dense";
  }
  return "?";
}

namespace {

struct BfsRelax {
  std::vector<Distance>& dist;

  bool cond(VertexId v) const { return std::atomic_ref<Distance>(dist[v]).load(std::memory_order_relaxed) == kUnreachable; }

  bool update(VertexId u, VertexId v) {
    dist[v] = dist[u] + 1;
    return true;
  }

  bool update_atomic(VertexId u, VertexId v) {
    Distance expected = kUnreachable;
    return std::atomic_ref<Distance>(dist[v]).compare_exchange_strong(expected, dist[u] + 1,
                                                                       std::memory_order_relaxed);
  }
};

}  // namespace

std::vector<Distance> plain_bfs(const Graph& g, VertexId source, const EdgeMapOptions& opts) {
  if (source >= g.num_vertices()) throw UsageError("bfs source out of range");
  std::vector<Distance> dist(g.num_vertices(), kUnreachable);
  dist[source] = 0;
  BfsRelax relax{dist};
  Frontier frontier(g.num_vertices(), {source});
  while (!frontier.empty()) frontier = edge_map(g, frontier, relax, opts);
  return dist;
}

}  // namespace cbfs
