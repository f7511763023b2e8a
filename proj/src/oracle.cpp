#include "cbfs/oracle.hpp"

#include <algorithm>
#include <queue>

namespace cbfs::oracle {

std::vector<Distance> bfs_distances(const Graph& g, VertexId source) {
  std::vector<Distance> dist(g.num_vertices(), kUnreachable);
  std::queue<VertexId> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop();
    for (VertexId v : g.out_neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

std::vector<std::vector<Distance>> all_pairs(const Graph& g) {
  std::vector<std::vector<Distance>> rows(g.num_vertices());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t s = 0; s < rows.size(); ++s) rows[s] = bfs_distances(g, static_cast<VertexId>(s));
  return rows;
}

std::vector<Distance> pair_distances(const Graph& g, std::span<const std::pair<VertexId, VertexId>> pairs) {
  std::vector<std::size_t> by_source(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) by_source[i] = i;
  std::sort(by_source.begin(), by_source.end(),
            [&](std::size_t a, std::size_t b) { return pairs[a].first < pairs[b].first; });

  // Runs of equal first endpoint share one BFS.
  std::vector<std::size_t> run_starts;
  for (std::size_t i = 0; i < by_source.size(); ++i)
    if (i == 0 || pairs[by_source[i]].first != pairs[by_source[i - 1]].first) run_starts.push_back(i);
  run_starts.push_back(by_source.size());

  std::vector<Distance> out(pairs.size(), kUnreachable);
  const std::size_t runs = run_starts.size() - 1;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t r = 0; r < runs; ++r) {
    auto dist = bfs_distances(g, pairs[by_source[run_starts[r]]].first);
    for (std::size_t i = run_starts[r]; i < run_starts[r + 1]; ++i)
      out[by_source[i]] = dist[pairs[by_source[i]].second];
  }
  return out;
}

std::vector<VertexId> connected_components(const Graph& g) {
  const std::size_t n = g.num_vertices();
  constexpr VertexId kNone = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> comp(n, kNone);
  std::vector<VertexId> stack;
  VertexId next_id = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] != kNone) continue;
    comp[s] = next_id;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId v : g.out_neighbors(u))
        if (comp[v] == kNone) {
          comp[v] = next_id;
          stack.push_back(v);
        }
    }
    ++next_id;
  }
  return comp;
}

}  // namespace cbfs::oracle
