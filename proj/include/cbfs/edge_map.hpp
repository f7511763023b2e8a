#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cbfs/graph.hpp"
#include "cbfs/parallel.hpp"

namespace cbfs {

// Vertex set processed in one BFS round, kept in sparse (id list) form.
class Frontier {
 public:
  Frontier() = default;
  Frontier(std::size_t universe, std::vector<VertexId> vertices, std::uint32_t round = 0)
      : universe_(universe), round_(round), vertices_(std::move(vertices)) {}

  std::size_t universe() const { return universe_; }
  std::uint32_t round() const { return round_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  std::span<const VertexId> vertices() const { return vertices_; }

  // Boolean map over the universe.
  std::vector<std::uint8_t> to_dense() const {
    std::vector<std::uint8_t> dense(universe_, 0);
    for (VertexId v : vertices_) dense[v] = 1;
    return dense;
  }

 private:
  std::size_t universe_ = 0;
  std::uint32_t round_ = 0;
  std::vector<VertexId> vertices_;
};

enum class EdgeMapMode : std::uint8_t { kAuto, kSparse, kDense };

const char* to_string(EdgeMapMode mode);

struct EdgeMapOptions {
  EdgeMapMode mode = EdgeMapMode::kAuto;
  // Go dense once (frontier out-degree + frontier size) > arcs / dense_divisor.
  std::size_t dense_divisor = 20;
};

// Callbacks an edge_map traversal needs.
//   cond(v):          whether v still wants input this round (pure)
//   update_atomic(u,v): sparse-mode relax; may race with other workers on v,
//                     returns true for exactly one caller that claims v
//   update(u,v):      dense-mode relax; the caller owns v, returns true when v
//                     changed and belongs in the next frontier
template <class F>
concept EdgeFunctor = requires(F f, VertexId u, VertexId v) {
  { f.cond(v) } -> std::convertible_to<bool>;
  { f.update(u, v) } -> std::convertible_to<bool>;
  { f.update_atomic(u, v) } -> std::convertible_to<bool>;
};

inline bool prefers_dense(const Graph& g, const Frontier& frontier, const EdgeMapOptions& opts) {
  if (opts.mode != EdgeMapMode::kAuto) return opts.mode == EdgeMapMode::kDense;
  const auto vs = frontier.vertices();
  std::uint64_t out_degree = 0;
#pragma omp parallel for reduction(+ : out_degree) schedule(static)
  for (std::size_t i = 0; i < vs.size(); ++i) out_degree += g.out_degree(vs[i]);
  const std::size_t divisor = opts.dense_divisor == 0 ? 1 : opts.dense_divisor;
  return out_degree + vs.size() > g.num_arcs() / divisor;
}

namespace detail {

inline std::vector<VertexId> concat(std::vector<std::vector<VertexId>>& buckets) {
  std::size_t total = 0;
  for (auto& b : buckets) total += b.size();
  std::vector<VertexId> out;
  out.reserve(total);
  for (auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
  return out;
}

template <EdgeFunctor F>
std::vector<VertexId> edge_map_sparse(const Graph& g, const Frontier& frontier, F& f) {
  const auto vs = frontier.vertices();
  std::vector<std::vector<VertexId>> buckets(static_cast<std::size_t>(parallel::max_workers()));
#pragma omp parallel
  {
    auto& local = buckets[static_cast<std::size_t>(parallel::worker_id())];
#pragma omp for schedule(dynamic, 32) nowait
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const VertexId u = vs[i];
      for (VertexId v : g.out_neighbors(u))
        if (f.cond(v) && f.update_atomic(u, v)) local.push_back(v);
    }
  }
  return concat(buckets);
}

template <EdgeFunctor F>
std::vector<VertexId> edge_map_dense(const Graph& g, const Frontier& frontier, F& f) {
  const std::size_t n = g.num_vertices();
  const std::vector<std::uint8_t> in_frontier = frontier.to_dense();
  std::vector<std::uint8_t> added(n, 0);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<VertexId>(i);
    if (!f.cond(v)) continue;
    bool hit = false;
    for (VertexId u : g.in_neighbors(v)) {
      if (in_frontier[u] && f.update(u, v)) hit = true;
      // Plain BFS stops at the first claim; functors whose cond stays true
      // keep folding in every frontier in-neighbor.
      if (!f.cond(v)) break;
    }
    added[i] = hit ? 1 : 0;
  }
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < n; ++i)
    if (added[i]) out.push_back(static_cast<VertexId>(i));
  return out;
}

}  // namespace detail

// Maps the frontier to the set of vertices its arcs newly reach, choosing
// forward (sparse) or backward (dense) traversal per `opts`. The mode that
// actually ran is written to `used` when given.
template <EdgeFunctor F>
Frontier edge_map(const Graph& g, const Frontier& frontier, F& f, const EdgeMapOptions& opts = {},
                  EdgeMapMode* used = nullptr) {
  if (frontier.empty()) {
    if (used) *used = EdgeMapMode::kSparse;
    return Frontier(g.num_vertices(), {}, frontier.round() + 1);
  }
  const bool dense = prefers_dense(g, frontier, opts);
  if (used) *used = dense ? EdgeMapMode::kDense : EdgeMapMode::kSparse;
  auto next = dense ? detail::edge_map_dense(g, frontier, f) : detail::edge_map_sparse(g, frontier, f);
  return Frontier(g.num_vertices(), std::move(next), frontier.round() + 1);
}

}  // namespace cbfs
