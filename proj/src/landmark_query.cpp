#include <algorithm>
#include <deque>
#include <unordered_map>

#include "cbfs/landmark.hpp"
#include "cbfs/landmark_record.hpp"

namespace cbfs {

namespace {

// Subset index holding source 0, the star center.
std::size_t center_slot(std::span<const Word> subsets, std::size_t w, std::uint32_t d) {
  for (std::size_t i = 0; i <= d; ++i)
    if (bits::test(subsets.subspan(i * w, w), 0)) return i;
  return d;
}

void check_pair(const LandmarkIndex& idx, VertexId u, VertexId v) {
  if (u >= idx.num_vertices() || v >= idx.num_vertices()) throw UsageError("query vertex out of range");
}

}  // namespace

Distance per_cluster_estimate(const LandmarkIndex& idx, std::size_t c, VertexId u, VertexId v,
                              const QueryOptions& opts, std::size_t* source_index) {
  const auto ru = idx.record(u, c);
  const auto rv = idx.record(v, c);
  // A saturated delta only bounds the true one from below; using it could
  // undercut the real distance, so the cluster sits this pair out.
  if (ru[0] >= kRecordSaturated || rv[0] >= kRecordSaturated) return kUnreachable;

  const Cluster& cl = idx.cluster(c);
  const std::size_t k = cl.size();
  const std::uint32_t d = cl.d;
  const std::size_t w = words_for(k);
  thread_local std::vector<Word> su, sv;
  su.resize((d + 1) * w);
  sv.resize((d + 1) * w);
  record::unpack(ru, k, d, su);
  record::unpack(rv, k, d, sv);

  std::size_t max_i = d, max_j = d;
  if (opts.star_shortcut && idx.is_star(c)) {
    max_i = center_slot(su, w, d);
    max_j = center_slot(sv, w, d);
  }
  const Distance base = Distance{ru[0]} + Distance{rv[0]};
  for (std::size_t t = 0; t <= max_i + max_j; ++t) {
    const std::size_t lo = t > max_j ? t - max_j : 0;
    const std::size_t hi = std::min(t, max_i);
    for (std::size_t i = lo; i <= hi; ++i) {
      const std::size_t j = t - i;
      const auto a = std::span<const Word>(su).subspan(i * w, w);
      const auto b = std::span<const Word>(sv).subspan(j * w, w);
      if (auto s = bits::lowest_common(a, b)) {
        if (source_index) *source_index = *s;
        return base + static_cast<Distance>(t);
      }
    }
  }
  return kUnreachable;
}

QueryResult query_ll(const LandmarkIndex& idx, VertexId u, VertexId v, const QueryOptions& opts) {
  check_pair(idx, u, v);
  QueryResult best;
  for (std::size_t c = 0; c < idx.num_clusters(); ++c) {
    std::size_t s = 0;
    const Distance est = per_cluster_estimate(idx, c, u, v, opts, &s);
    if (est < best.estimate) {
      best.estimate = est;
      best.witness = {QueryWitness::Kind::kCluster, c, s};
    }
  }
  return best;
}

Distance query_plain(const PlainIndex& idx, VertexId u, VertexId v) {
  if (u >= idx.num_vertices() || v >= idx.num_vertices()) throw UsageError("query vertex out of range");
  Distance best = kUnreachable;
  for (std::size_t l = 0; l < idx.landmarks().size(); ++l) {
    const std::uint8_t a = idx.distance_byte(u, l), b = idx.distance_byte(v, l);
    if (a >= kRecordSaturated || b >= kRecordSaturated) continue;
    best = std::min(best, Distance{a} + Distance{b});
  }
  return best;
}

Distance bidirectional_refine(const Graph& g, VertexId u, VertexId v, std::size_t tau) {
  if (u >= g.num_vertices() || v >= g.num_vertices()) throw UsageError("query vertex out of range");
  if (tau == 0) return kUnreachable;

  struct Side {
    std::unordered_map<VertexId, Distance> dist;
    std::deque<VertexId> queue;
    std::size_t expanded = 0;
    bool forward;
  };
  Side sides[2];
  sides[0].forward = true;
  sides[1].forward = false;
  sides[0].dist.emplace(u, 0);
  sides[0].queue.push_back(u);
  sides[1].dist.emplace(v, 0);
  sides[1].queue.push_back(v);
  Distance best = u == v ? 0 : kUnreachable;

  auto active = [&](const Side& s) { return s.expanded < tau && !s.queue.empty(); };
  while (active(sides[0]) || active(sides[1])) {
    std::size_t pick = 0;
    if (!active(sides[0]))
      pick = 1;
    else if (active(sides[1]) && sides[1].queue.size() < sides[0].queue.size())
      pick = 1;
    Side& me = sides[pick];
    const Side& other = sides[1 - pick];

    const VertexId x = me.queue.front();
    me.queue.pop_front();
    ++me.expanded;
    const Distance next = me.dist[x] + 1;
    const auto nbrs = me.forward ? g.out_neighbors(x) : g.in_neighbors(x);
    for (VertexId y : nbrs) {
      if (!me.dist.emplace(y, next).second) continue;
      me.queue.push_back(y);
      if (auto it = other.dist.find(y); it != other.dist.end()) best = std::min(best, next + it->second);
    }
  }
  return best;
}

QueryResult query_combined(const LandmarkIndex& idx, const Graph& g, VertexId u, VertexId v, std::size_t tau,
                           const QueryOptions& opts) {
  QueryResult best = query_ll(idx, u, v, opts);
  const Distance refined = bidirectional_refine(g, u, v, tau);
  if (refined < best.estimate) {
    best.estimate = refined;
    best.witness = {QueryWitness::Kind::kBidirectional, 0, 0};
  }
  return best;
}

}  // namespace cbfs
