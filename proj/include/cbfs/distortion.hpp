#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cbfs/graph.hpp"
#include "cbfs/landmark.hpp"

namespace cbfs {

using VertexPair = std::pair<VertexId, VertexId>;

struct PairSample {
  std::vector<VertexPair> pairs;
  bool exhaustive = false;  // every reachable ordered pair, in (u, v) order
  std::vector<std::string> warnings;
};

// Ordered pairs u != v drawn uniformly from the pairs in a common connected
// component of a symmetric graph. Asking for at least as many pairs as exist
// returns all of them instead.
PairSample sample_reachable_pairs(const Graph& g, std::size_t count, std::uint64_t seed);

struct DistortionStats {
  std::size_t pairs = 0;               // pairs scored
  std::size_t covered = 0;             // estimate reachable
  std::size_t coverage_failures = 0;   // estimate unreachable
  std::size_t exact_hits = 0;          // estimate == truth
  std::size_t underestimates = 0;      // estimate < truth; nonzero means a broken oracle
  std::optional<double> epsilon_percent;  // mean(estimate/truth - 1) * 100 over covered pairs
  double max_distortion = 0.0;            // max estimate/truth over covered pairs
  bool exhaustive = false;
  std::vector<std::string> warnings;

  double exact_rate() const { return pairs == 0 ? 0.0 : static_cast<double>(exact_hits) / static_cast<double>(pairs); }
};

// Must be safe to call concurrently.
using DistanceFn = std::function<Distance(VertexId, VertexId)>;

// Scores `query` against known true distances, one per pair.
DistortionStats score_pairs(std::span<const VertexPair> pairs, std::span<const Distance> truth, const DistanceFn& query);

// Samples pairs, computes truth by queue BFS, scores `query`.
DistortionStats eval_distortion(const Graph& g, const DistanceFn& query, std::size_t pair_count, std::uint64_t seed);

// Same, with the landmark index plus a tau-bounded bidirectional search.
DistortionStats eval_distortion(const LandmarkIndex& idx, const Graph& g, std::size_t pair_count, std::uint64_t seed,
                                std::size_t tau);

}  // namespace cbfs
