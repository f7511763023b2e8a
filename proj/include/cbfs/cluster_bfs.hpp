#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cbfs/bit_subset.hpp"
#include "cbfs/edge_map.hpp"
#include "cbfs/graph.hpp"

namespace cbfs {

// k distinct source vertices whose pairwise hop distance is at most d.
struct Cluster {
  std::vector<VertexId> sources;
  std::uint32_t d = 0;

  std::size_t size() const { return sources.size(); }
  bool operator==(const Cluster&) const = default;
};

inline constexpr std::uint16_t kDeltaUnreachable = 0xFFFF;

// Distances from every source of a cluster to one vertex v: delta is the
// smallest of them, and subset i holds the sources at distance delta + i.
// Non-owning view into a ClusterDistances table.
class ClusterDistanceVector {
 public:
  ClusterDistanceVector(std::uint16_t delta, std::span<const Word> subset_words, std::size_t k, std::uint32_t d)
      : delta_(delta), words_(subset_words), k_(k), d_(d) {}

  std::uint16_t delta() const { return delta_; }
  bool reachable() const { return delta_ != kDeltaUnreachable; }
  std::size_t capacity() const { return k_; }
  std::uint32_t d() const { return d_; }
  std::size_t subset_count() const { return d_ + 1; }

  std::span<const Word> subset_words(std::size_t i) const {
    const std::size_t w = words_for(k_);
    return words_.subspan(i * w, w);
  }
  BitSubset subset(std::size_t i) const { return BitSubset::from_words(k_, subset_words(i)); }

 private:
  std::uint16_t delta_;
  std::span<const Word> words_;
  std::size_t k_;
  std::uint32_t d_;
};

// Hop distance from source `source_index` to the vector's vertex, or
// kUnreachable when no subset contains the source.
Distance decode_distance(const ClusterDistanceVector& vec, std::size_t source_index);

// Cluster distance vectors for all vertices, stored flat: deltas[v] and
// (d+1) * words_per_subset words per vertex.
class ClusterDistances {
 public:
  ClusterDistances() = default;
  ClusterDistances(std::size_t n, std::size_t k, std::uint32_t d)
      : n_(n), k_(k), d_(d), deltas_(n, kDeltaUnreachable), words_(n * (d + 1) * words_for(k), 0) {}

  std::size_t num_vertices() const { return n_; }
  std::size_t capacity() const { return k_; }
  std::uint32_t d() const { return d_; }
  std::size_t words_per_subset() const { return words_for(k_); }
  std::size_t words_per_vertex() const { return (d_ + 1) * words_per_subset(); }

  ClusterDistanceVector operator[](VertexId v) const {
    return {deltas_[v], std::span<const Word>(words_).subspan(v * words_per_vertex(), words_per_vertex()), k_, d_};
  }
  Distance decode(VertexId v, std::size_t source_index) const { return decode_distance((*this)[v], source_index); }

  std::span<const std::uint16_t> deltas() const { return deltas_; }
  std::span<const Word> subset_words() const { return words_; }
  std::vector<std::uint16_t>& mutable_deltas() { return deltas_; }
  std::vector<Word>& mutable_subset_words() { return words_; }

  bool operator==(const ClusterDistances&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::uint32_t d_ = 0;
  std::vector<std::uint16_t> deltas_;
  std::vector<Word> words_;
};

struct RoundInfo {
  std::uint32_t round = 0;
  std::size_t frontier_size = 0;
  EdgeMapMode mode = EdgeMapMode::kSparse;
};

struct ClusterBfsOptions {
  EdgeMapOptions edge_map;
  // Called once per processed round, from the calling thread.
  std::function<void(const RoundInfo&)> on_round;
  // Fill ClusterBfsStats::frontier_appearances (one counter per vertex).
  bool count_frontier_appearances = false;
};

struct ClusterBfsStats {
  std::uint32_t rounds = 0;
  std::vector<RoundInfo> round_log;
  std::vector<std::uint32_t> frontier_appearances;
};

// Round-synchronous bit-parallel BFS from every source of `cluster` at once.
// Decoded distances are exact when the cluster's true diameter is at most
// cluster.d; otherwise sources beyond delta + d of a vertex go unrecorded.
// Throws UsageError for an empty cluster, out-of-range or repeated sources.
ClusterDistances cluster_bfs(const Graph& g, const Cluster& cluster, const ClusterBfsOptions& opts = {},
                             ClusterBfsStats* stats = nullptr);

}  // namespace cbfs
