#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cbfs/cluster_bfs.hpp"
#include "cbfs/graph.hpp"

namespace cbfs {

// Which vertices the floor(d/2)-hop candidate search may pass through.
enum class HopPolicy : std::uint8_t {
  kThroughMarked,  // already-selected vertices relay but never join
  kUnmarkedOnly,   // already-selected vertices block the search
};

struct SelectionConfig {
  std::size_t r = 1;  // clusters wanted
  std::size_t k = 64;
  std::uint32_t d = 2;
  HopPolicy hops = HopPolicy::kThroughMarked;
};

struct SelectionResult {
  std::vector<Cluster> clusters;
  std::vector<std::string> warnings;
};

// Greedy degree-first selection. Each cluster is the highest-degree unmarked
// vertex plus up to k-1 highest-degree unmarked vertices within floor(d/2)
// hops of it; chosen vertices are marked so clusters never share a member.
// Stops early, with a warning, when no unmarked vertex remains.
SelectionResult select_clusters(const Graph& g, const SelectionConfig& cfg);

// One cluster around a given center. `marked`, when non-empty, excludes
// vertices from membership.
Cluster grow_cluster(const Graph& g, VertexId center, std::size_t k, std::uint32_t d,
                     std::span<const std::uint8_t> marked = {},
                     HopPolicy hops = HopPolicy::kThroughMarked);

// True iff every pair of sources is within c.d hops. Out-of-range or
// repeated sources make the cluster invalid.
bool validate_cluster(const Graph& g, const Cluster& c);

// Text form: one cluster per line, "d k v1 v2 ... vk".
void write_clusters(std::ostream& out, std::span<const Cluster> clusters);
std::vector<Cluster> read_clusters(std::istream& in);

}  // namespace cbfs
