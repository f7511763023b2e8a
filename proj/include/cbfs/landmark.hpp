#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cbfs/byte_io.hpp"
#include "cbfs/cluster_bfs.hpp"
#include "cbfs/graph.hpp"

namespace cbfs {

// Bytes one vertex spends on one cluster: a delta byte plus d subsets of
// ceil(k/8) bytes. The (d+1)-th subset is implied.
std::size_t cluster_record_bytes(std::size_t k, std::uint32_t d);

// How many (k, d) clusters fit in `budget` bytes per vertex.
std::size_t budget_to_cluster_count(std::size_t budget, std::size_t k, std::uint32_t d);

inline constexpr std::uint8_t kRecordUnreachable = 255;
inline constexpr std::uint8_t kRecordSaturated = 254;  // true delta is >= 254

// Compressed cluster distance vectors for every vertex, vertex-major: all of
// vertex 0's cluster records, then vertex 1's, and so on.
class LandmarkIndex {
 public:
  static constexpr std::uint32_t kVersion = 1;

  LandmarkIndex() = default;
  LandmarkIndex(std::size_t n, std::vector<Cluster> clusters);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_clusters() const { return clusters_.size(); }
  const std::vector<Cluster>& clusters() const { return clusters_; }
  const Cluster& cluster(std::size_t c) const { return clusters_[c]; }
  std::size_t bytes_per_vertex() const { return stride_; }

  std::span<const std::uint8_t> record(VertexId v, std::size_t c) const {
    return std::span<const std::uint8_t>(bytes_).subspan(v * stride_ + offsets_[c],
                                                         cluster_record_bytes(clusters_[c].size(), clusters_[c].d));
  }
  std::uint8_t delta_byte(VertexId v, std::size_t c) const { return bytes_[v * stride_ + offsets_[c]]; }

  // Source 0 is adjacent to every other source. Derived from source 0's own
  // record, so it is never stored.
  bool is_star(std::size_t c) const { return star_[c] != 0; }

  // Writes cluster c's records from a full cluster-BFS result.
  void store(std::size_t c, const ClusterDistances& dist);

  // Expands cluster c back to the in-memory form, rebuilding subset d.
  // Saturated deltas decode as 254.
  ClusterDistances expand(std::size_t c) const;

  std::vector<std::uint8_t> encode() const;
  static LandmarkIndex decode(std::span<const std::uint8_t> bytes);
  void save(const std::filesystem::path& path) const;
  static LandmarkIndex load(const std::filesystem::path& path);

  // Appends the serialized form to `out`; reads one back from `in`.
  void encode_into(ByteWriter& out) const;
  static LandmarkIndex decode_from(ByteReader& in);

  bool operator==(const LandmarkIndex& o) const { return n_ == o.n_ && clusters_ == o.clusters_ && bytes_ == o.bytes_; }

 private:
  void refresh_star(std::size_t c);

  std::size_t n_ = 0;
  std::vector<Cluster> clusters_;
  std::vector<std::size_t> offsets_;  // byte offset of each cluster inside a vertex record
  std::size_t stride_ = 0;
  std::vector<std::uint8_t> bytes_;
  std::vector<std::uint8_t> star_;
};

// Runs cluster-BFS for each cluster and compresses the vectors.
LandmarkIndex build_ll_index(const Graph& g, std::span<const Cluster> clusters);

// Baseline: one saturating distance byte per landmark per vertex.
class PlainIndex {
 public:
  PlainIndex() = default;
  PlainIndex(std::size_t n, std::vector<VertexId> landmarks)
      : n_(n), landmarks_(std::move(landmarks)), bytes_(n * landmarks_.size(), kRecordUnreachable) {}

  std::size_t num_vertices() const { return n_; }
  const std::vector<VertexId>& landmarks() const { return landmarks_; }
  std::uint8_t distance_byte(VertexId v, std::size_t l) const { return bytes_[v * landmarks_.size() + l]; }
  void set(VertexId v, std::size_t l, Distance dist);

 private:
  std::size_t n_ = 0;
  std::vector<VertexId> landmarks_;
  std::vector<std::uint8_t> bytes_;
};

PlainIndex build_plain_ll_index(const Graph& g, std::span<const VertexId> landmarks);

struct QueryWitness {
  enum class Kind : std::uint8_t { kNone, kCluster, kBidirectional };
  Kind kind = Kind::kNone;
  std::size_t cluster = 0;       // kCluster only
  std::size_t source_index = 0;  // kCluster only
};

struct QueryResult {
  Distance estimate = kUnreachable;
  QueryWitness witness;
};

struct QueryOptions {
  // On star clusters, only scan subsets up to the one holding the center.
  // Gives the same answers as the full scan with fewer intersections.
  bool star_shortcut = false;
};

// Upper bound on d(u, v) through cluster c's sources; kUnreachable when the
// cluster misses either endpoint or a delta saturated. `source_index`, when
// given, receives a source attaining the bound.
Distance per_cluster_estimate(const LandmarkIndex& idx, std::size_t c, VertexId u, VertexId v,
                              const QueryOptions& opts = {}, std::size_t* source_index = nullptr);

QueryResult query_ll(const LandmarkIndex& idx, VertexId u, VertexId v, const QueryOptions& opts = {});
Distance query_plain(const PlainIndex& idx, VertexId u, VertexId v);

// Alternating BFS from both ends, each side expanding at most `tau` vertices.
// Returns the best meeting distance or kUnreachable.
Distance bidirectional_refine(const Graph& g, VertexId u, VertexId v, std::size_t tau);

QueryResult query_combined(const LandmarkIndex& idx, const Graph& g, VertexId u, VertexId v, std::size_t tau,
                           const QueryOptions& opts = {});

}  // namespace cbfs
