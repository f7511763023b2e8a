#include "cbfs/graph.hpp"

#include <algorithm>
#include <numeric>

namespace cbfs {

namespace {

// Counting-sort arcs into CSR, then sort and dedupe each neighbor range.
void build_csr(std::size_t n, const std::vector<Graph::Arc>& arcs, bool reversed,
               std::vector<std::uint64_t>& offsets, std::vector<VertexId>& targets) {
  std::vector<std::uint64_t> count(n + 1, 0);
  for (auto [u, v] : arcs) ++count[(reversed ? v : u) + 1];
  std::partial_sum(count.begin(), count.end(), count.begin());
  std::vector<VertexId> raw(arcs.size());
  std::vector<std::uint64_t> cursor(count.begin(), count.end() - 1);
  for (auto [u, v] : arcs) {
    VertexId src = reversed ? v : u;
    raw[cursor[src]++] = reversed ? u : v;
  }

  offsets.assign(n + 1, 0);
  targets.clear();
  targets.reserve(raw.size());
  for (std::size_t v = 0; v < n; ++v) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(count[v]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(count[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it)
      if (*it != v) targets.push_back(*it);
    offsets[v + 1] = targets.size();
  }
  targets.shrink_to_fit();
}

}  // namespace

Graph Graph::from_arcs(std::size_t n, std::vector<Arc> arcs, bool symmetrize) {
  for (auto [u, v] : arcs)
    if (u >= n || v >= n) throw UsageError("arc endpoint out of range");
  Graph g;
  g.symmetric_ = symmetrize;
  if (symmetrize) {
    const std::size_t original = arcs.size();
    arcs.reserve(2 * original);
    for (std::size_t i = 0; i < original; ++i) arcs.emplace_back(arcs[i].second, arcs[i].first);
    build_csr(n, arcs, false, g.out_offsets_, g.out_targets_);
  } else {
    build_csr(n, arcs, false, g.out_offsets_, g.out_targets_);
    build_csr(n, arcs, true, g.in_offsets_, g.in_targets_);
  }
  return g;
}

Graph Graph::from_csr(std::vector<std::uint64_t> out_offsets, std::vector<VertexId> out_targets,
                      std::vector<std::uint64_t> in_offsets, std::vector<VertexId> in_targets,
                      bool symmetric) {
  Graph g;
  g.out_offsets_ = std::move(out_offsets);
  g.out_targets_ = std::move(out_targets);
  g.in_offsets_ = std::move(in_offsets);
  g.in_targets_ = std::move(in_targets);
  g.symmetric_ = symmetric;
  return g;
}

std::vector<VertexId> order_by_degree(const Graph& g) {
  std::vector<VertexId> order(g.num_vertices());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return g.out_degree(a) > g.out_degree(b);
  });
  return order;
}

namespace {

ValidationReport fail(std::string why) { return {false, std::move(why)}; }

ValidationReport check_csr(const std::vector<std::uint64_t>& offsets,
                           const std::vector<VertexId>& targets, std::size_t n,
                           const std::string& side) {
  if (offsets.size() != n + 1) return fail(side + " offsets length is not n+1");
  if (offsets.front() != 0) return fail(side + " offsets do not start at 0");
  if (offsets.back() != targets.size()) return fail("offset/arc mismatch");
  for (std::size_t v = 0; v < n; ++v)
    if (offsets[v] > offsets[v + 1]) return fail(side + " offsets decrease at vertex " + std::to_string(v));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::uint64_t a = offsets[v]; a < offsets[v + 1]; ++a) {
      if (targets[a] >= n) return fail("target out of range at vertex " + std::to_string(v));
      if (targets[a] == v) return fail("self-loop at vertex " + std::to_string(v));
      if (a > offsets[v] && targets[a - 1] >= targets[a])
        return fail(side + " neighbors not strictly increasing at vertex " + std::to_string(v));
    }
  }
  return {};
}

bool has_arc(const std::vector<std::uint64_t>& offsets, const std::vector<VertexId>& targets,
             VertexId u, VertexId v) {
  auto first = targets.begin() + static_cast<std::ptrdiff_t>(offsets[u]);
  auto last = targets.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]);
  return std::binary_search(first, last, v);
}

}  // namespace

ValidationReport validate(const Graph& g) {
  const auto& off = g.out_offsets();
  const auto& tgt = g.out_targets();
  if (off.empty()) return fail("offsets array is empty");
  const std::size_t n = off.size() - 1;
  if (auto r = check_csr(off, tgt, n, "out"); !r) return r;

  if (g.symmetric()) {
    if (!g.in_offsets().empty() || !g.in_targets().empty())
      return fail("symmetric graph carries separate in-arrays");
    for (VertexId u = 0; u < n; ++u)
      for (std::uint64_t a = off[u]; a < off[u + 1]; ++a)
        if (!has_arc(off, tgt, tgt[a], u))
          return fail("asymmetric arc " + std::to_string(u) + "->" + std::to_string(tgt[a]));
    return {};
  }

  if (auto r = check_csr(g.in_offsets(), g.in_targets(), n, "in"); !r) return r;
  if (g.in_targets().size() != tgt.size()) return fail("in/out arc count mismatch");
  for (VertexId u = 0; u < n; ++u)
    for (std::uint64_t a = off[u]; a < off[u + 1]; ++a)
      if (!has_arc(g.in_offsets(), g.in_targets(), tgt[a], u))
        return fail("in-arcs miss " + std::to_string(u) + "->" + std::to_string(tgt[a]));
  return {};
}

}  // namespace cbfs
