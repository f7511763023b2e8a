#include "cbfs/cluster_select.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace cbfs {

namespace {

// Vertices within `radius` hops of `center`, excluding the center itself.
std::vector<VertexId> ball(const Graph& g, VertexId center, std::uint32_t radius,
                           std::span<const std::uint8_t> marked, HopPolicy hops) {
  std::unordered_map<VertexId, std::uint32_t> depth{{center, 0}};
  std::vector<VertexId> layer{center};
  std::vector<VertexId> found;
  for (std::uint32_t h = 0; h < radius && !layer.empty(); ++h) {
    std::vector<VertexId> next;
    for (VertexId u : layer) {
      for (VertexId v : g.out_neighbors(u)) {
        if (depth.contains(v)) continue;
        const bool is_marked = !marked.empty() && marked[v];
        if (is_marked && hops == HopPolicy::kUnmarkedOnly) continue;
        depth.emplace(v, h + 1);
        next.push_back(v);
        found.push_back(v);
      }
    }
    layer = std::move(next);
  }
  return found;
}

}  // namespace

Cluster grow_cluster(const Graph& g, VertexId center, std::size_t k, std::uint32_t d,
                     std::span<const std::uint8_t> marked, HopPolicy hops) {
  if (center >= g.num_vertices()) throw UsageError("cluster center out of range");
  if (k == 0) throw UsageError("cluster capacity k must be at least 1");
  Cluster c;
  c.d = d;
  c.sources.push_back(center);

  std::vector<VertexId> candidates;
  for (VertexId v : ball(g, center, d / 2, marked, hops))
    if (marked.empty() || !marked[v]) candidates.push_back(v);
  std::sort(candidates.begin(), candidates.end(), [&](VertexId a, VertexId b) {
    const auto da = g.out_degree(a), db = g.out_degree(b);
    return da != db ? da > db : a < b;
  });
  const std::size_t take = std::min(candidates.size(), k - 1);
  c.sources.insert(c.sources.end(), candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take));
  return c;
}

SelectionResult select_clusters(const Graph& g, const SelectionConfig& cfg) {
  if (!g.symmetric()) throw UsageError("cluster selection needs an undirected graph");
  if (cfg.r == 0) throw UsageError("cluster count r must be at least 1");
  if (cfg.k == 0) throw UsageError("cluster capacity k must be at least 1");

  SelectionResult result;
  const auto order = order_by_degree(g);
  std::vector<std::uint8_t> marked(g.num_vertices(), 0);
  std::size_t cursor = 0;
  while (result.clusters.size() < cfg.r) {
    while (cursor < order.size() && marked[order[cursor]]) ++cursor;
    if (cursor == order.size()) break;
    Cluster c = grow_cluster(g, order[cursor], cfg.k, cfg.d, marked, cfg.hops);
    for (VertexId v : c.sources) marked[v] = 1;
    result.clusters.push_back(std::move(c));
  }
  if (result.clusters.size() < cfg.r) {
    std::ostringstream msg;
    msg << "requested " << cfg.r << " clusters but the graph supplied only " << result.clusters.size();
    result.warnings.push_back(msg.str());
  }
  return result;
}

bool validate_cluster(const Graph& g, const Cluster& c) {
  const std::size_t n = g.num_vertices();
  if (c.sources.empty()) return false;
  std::unordered_map<VertexId, std::size_t> index;
  for (std::size_t j = 0; j < c.sources.size(); ++j) {
    if (c.sources[j] >= n || !index.emplace(c.sources[j], j).second) return false;
  }

  // Depth-limited BFS from each source; every other source must show up.
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t epoch = 0;
  for (VertexId s : c.sources) {
    ++epoch;
    std::size_t reached = 0;
    std::vector<VertexId> layer{s};
    stamp[s] = epoch;
    for (std::uint32_t depth = 0;; ++depth) {
      for (VertexId u : layer)
        if (index.contains(u)) ++reached;
      if (depth == c.d || layer.empty() || reached == c.sources.size()) break;
      std::vector<VertexId> next;
      for (VertexId u : layer)
        for (VertexId v : g.out_neighbors(u))
          if (stamp[v] != epoch) {
            stamp[v] = epoch;
            next.push_back(v);
          }
      layer = std::move(next);
    }
    if (reached != c.sources.size()) return false;
  }
  return true;
}

void write_clusters(std::ostream& out, std::span<const Cluster> clusters) {
  for (const auto& c : clusters) {
    out << c.d << ' ' << c.sources.size();
    for (VertexId v : c.sources) out << ' ' << v;
    out << '\n';
  }
}

std::vector<Cluster> read_clusters(std::istream& in) {
  std::vector<Cluster> clusters;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::uint64_t d = 0, k = 0;
    if (!(fields >> d)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw DataError("cluster line " + std::to_string(line_no) + ": missing d");
    }
    if (!(fields >> k) || k == 0)
      throw DataError("cluster line " + std::to_string(line_no) + ": missing or zero k");
    Cluster c;
    c.d = static_cast<std::uint32_t>(d);
    for (std::uint64_t i = 0; i < k; ++i) {
      std::uint64_t v = 0;
      if (!(fields >> v) || v > std::numeric_limits<VertexId>::max())
        throw DataError("cluster line " + std::to_string(line_no) + ": expected " + std::to_string(k) + " vertex ids");
      c.sources.push_back(static_cast<VertexId>(v));
    }
    std::string extra;
    if (fields >> extra) throw DataError("cluster line " + std::to_string(line_no) + ": trailing text");
    clusters.push_back(std::move(c));
  }
  return clusters;
}

}  // namespace cbfs
