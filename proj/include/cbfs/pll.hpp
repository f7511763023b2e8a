#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "cbfs/cluster_select.hpp"
#include "cbfs/graph.hpp"
#include "cbfs/landmark.hpp"

namespace cbfs {

// Batch sizes for the pruned-BFS phase: floor(200 * 1.5^i) until that
// reaches 1000, then 1000; the last batch takes whatever remains.
std::vector<std::size_t> batch_schedule(std::size_t remaining);

struct HubEntry {
  std::uint32_t rank = 0;  // hub's position in the degree order
  std::uint16_t dist = 0;

  bool operator==(const HubEntry&) const = default;
};

// 2-hop labels: per vertex, hubs in increasing rank, plus the cluster part
// that stands in for the cluster sources' own labels.
class TwoHopLabels {
 public:
  static constexpr std::uint32_t kVersion = 1;

  TwoHopLabels() = default;
  TwoHopLabels(std::size_t n, LandmarkIndex cluster_part, std::size_t k, std::uint32_t d);

  std::size_t num_vertices() const { return hubs_.size(); }
  const LandmarkIndex& cluster_part() const { return cluster_part_; }
  std::size_t k() const { return k_; }
  std::uint32_t d() const { return d_; }

  std::span<const HubEntry> hubs(VertexId v) const { return hubs_[v]; }
  void append(VertexId v, HubEntry e);

  std::size_t total_hubs() const;
  double avg_labels() const;
  std::size_t index_bytes() const { return encode().size(); }

  std::vector<std::uint8_t> encode() const;
  static TwoHopLabels decode(std::span<const std::uint8_t> bytes);
  void save(const std::filesystem::path& path) const;
  static TwoHopLabels load(const std::filesystem::path& path);

  bool operator==(const TwoHopLabels&) const = default;

 private:
  LandmarkIndex cluster_part_;
  std::size_t k_ = 0;
  std::uint32_t d_ = 0;
  std::vector<std::vector<HubEntry>> hubs_;
};

struct PllConfig {
  std::size_t r = 0;  // clusters in the first phase
  std::size_t k = 64;
  std::uint32_t d = 2;
  HopPolicy hops = HopPolicy::kThroughMarked;
  // One source per batch; the reference for measuring batching inflation.
  bool sequential = false;
};

struct PllStats {
  std::vector<std::size_t> batches;
  std::size_t phase2_sources = 0;
  std::size_t cluster_sources_rerun = 0;  // cluster sources also given a pruned BFS
  std::vector<std::string> warnings;
};

TwoHopLabels build_pll(const Graph& g, const PllConfig& cfg, PllStats* stats = nullptr);

// Pruned BFS from `source` against `labels` as they stand: a vertex reached
// at distance x is dropped, and not expanded, when the labels already give
// a distance <= x. Returns the surviving (vertex, distance) pairs in BFS
// order; the source itself always survives.
std::vector<std::pair<VertexId, Distance>> pruned_bfs(const Graph& g, VertexId source, const TwoHopLabels& labels);

Distance query_pll(const TwoHopLabels& labels, VertexId u, VertexId v);

}  // namespace cbfs
