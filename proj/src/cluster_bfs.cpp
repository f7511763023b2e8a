#include "cbfs/cluster_bfs.hpp"

#include <atomic>
#include <cassert>

namespace cbfs {

Distance decode_distance(const ClusterDistanceVector& vec, std::size_t source_index) {
  if (source_index >= vec.capacity()) throw UsageError("source index out of range");
  if (!vec.reachable()) return kUnreachable;
  for (std::size_t i = 0; i < vec.subset_count(); ++i)
    if (bits::test(vec.subset_words(i), source_index)) return Distance{vec.delta()} + static_cast<Distance>(i);
  return kUnreachable;
}

namespace {

constexpr std::uint32_t kNeverClaimed = std::numeric_limits<std::uint32_t>::max();

// Per-run engine state. kFixedWords > 0 pins the bit-subset width at compile
// time (the common k <= 64 case); 0 reads it from `width_`.
template <std::size_t kFixedWords>
class ClusterSearch {
 public:
  ClusterSearch(const Graph& g, const Cluster& c, ClusterDistances& out)
      : d_(c.d),
        width_(words_for(c.size())),
        seen_(g.num_vertices() * width_, 0),
        next_(g.num_vertices() * width_, 0),
        claimed_(g.num_vertices(), kNeverClaimed),
        out_(out) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      const VertexId s = c.sources[j];
      next_[s * width() + j / kWordBits] |= Word{1} << (j % kWordBits);
      claimed_[s] = 0;
    }
  }

  std::size_t width() const {
    if constexpr (kFixedWords > 0) return kFixedWords;
    return width_;
  }

  // Stage 1: fold the sources that first reached u this round into its vector.
  void fold(const Frontier& frontier, std::vector<std::uint32_t>* appearances) {
    const auto vs = frontier.vertices();
    const std::uint32_t round = frontier.round();
    if (round >= kDeltaUnreachable) throw DataError("cluster-BFS round count exceeds 65534");
    auto& deltas = out_.mutable_deltas();
    auto& words = out_.mutable_subset_words();
    const std::size_t w = width();
    const std::size_t per_vertex = (d_ + 1) * w;
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const VertexId u = vs[i];
      if (deltas[u] == kDeltaUnreachable) deltas[u] = static_cast<std::uint16_t>(round);
      const std::size_t slot = round - deltas[u];
      assert(slot <= d_);
      Word* dst = words.data() + u * per_vertex + slot * w;
      Word* seen = seen_.data() + u * w;
      const Word* next = next_.data() + u * w;
      for (std::size_t k = 0; k < w; ++k) {
        const Word fresh = next[k] & ~seen[k];
        dst[k] = fresh;
        seen[k] |= fresh;
      }
      if (appearances) ++(*appearances)[u];
    }
  }

  // Stage 2 callbacks for edge_map.
  void set_round(std::uint32_t round) { round_ = round; }

  bool cond(VertexId v) const {
    const std::uint16_t delta = out_.deltas()[v];
    return delta == kDeltaUnreachable || round_ - delta < d_;
  }

  bool update(VertexId u, VertexId v) {
    const std::size_t w = width();
    const Word* src = seen_.data() + u * w;
    Word* dst = next_.data() + v * w;
    bool changed = false;
    for (std::size_t k = 0; k < w; ++k) {
      const Word extra = src[k] & ~dst[k];
      if (extra) {
        dst[k] |= extra;
        changed = true;
      }
    }
    return changed;
  }

  bool update_atomic(VertexId u, VertexId v) {
    const std::size_t w = width();
    const Word* src = seen_.data() + u * w;
    Word* dst = next_.data() + v * w;
    bool changed = false;
    for (std::size_t k = 0; k < w; ++k) {
      std::atomic_ref<Word> slot(dst[k]);
      // Plain load first: most relaxations add nothing and skip the RMW.
      if ((src[k] & ~slot.load(std::memory_order_relaxed)) == 0) continue;
      const Word before = slot.fetch_or(src[k], std::memory_order_relaxed);
      if (src[k] & ~before) changed = true;
    }
    if (!changed) return false;
    std::atomic_ref<std::uint32_t> claim(claimed_[v]);
    const std::uint32_t target = round_ + 1;
    std::uint32_t current = claim.load(std::memory_order_relaxed);
    while (current != target)
      if (claim.compare_exchange_weak(current, target, std::memory_order_relaxed)) return true;
    return false;
  }

 private:
  std::uint32_t d_;
  std::size_t width_;
  std::uint32_t round_ = 0;
  std::vector<Word> seen_;
  std::vector<Word> next_;
  std::vector<std::uint32_t> claimed_;
  ClusterDistances& out_;
};

template <std::size_t kFixedWords>
void run(const Graph& g, const Cluster& cluster, const ClusterBfsOptions& opts, ClusterBfsStats* stats,
         ClusterDistances& out) {
  ClusterSearch<kFixedWords> search(g, cluster, out);
  std::vector<std::uint32_t>* appearances = nullptr;
  if (stats) {
    *stats = {};
    if (opts.count_frontier_appearances) {
      stats->frontier_appearances.assign(g.num_vertices(), 0);
      appearances = &stats->frontier_appearances;
    }
  }

  Frontier frontier(g.num_vertices(), cluster.sources, 0);
  while (!frontier.empty()) {
    search.fold(frontier, appearances);
    search.set_round(frontier.round());
    RoundInfo info{frontier.round(), frontier.size(), EdgeMapMode::kSparse};
    frontier = edge_map(g, frontier, search, opts.edge_map, &info.mode);
    if (stats) {
      ++stats->rounds;
      stats->round_log.push_back(info);
    }
    if (opts.on_round) opts.on_round(info);
  }
}

}  // namespace

ClusterDistances cluster_bfs(const Graph& g, const Cluster& cluster, const ClusterBfsOptions& opts,
                             ClusterBfsStats* stats) {
  if (cluster.sources.empty()) throw UsageError("cluster has no sources");
  std::vector<std::uint8_t> used(g.num_vertices(), 0);
  for (VertexId s : cluster.sources) {
    if (s >= g.num_vertices()) throw UsageError("cluster source " + std::to_string(s) + " out of range");
    if (used[s]++) throw UsageError("cluster source " + std::to_string(s) + " repeated");
  }

  ClusterDistances out(g.num_vertices(), cluster.size(), cluster.d);
  if (words_for(cluster.size()) == 1)
    run<1>(g, cluster, opts, stats, out);
  else
    run<0>(g, cluster, opts, stats, out);
  return out;
}

}  // namespace cbfs
