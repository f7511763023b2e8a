#include "cbfs/distortion.hpp"

#include <algorithm>
#include <random>

#include "cbfs/oracle.hpp"

namespace cbfs {

PairSample sample_reachable_pairs(const Graph& g, std::size_t count, std::uint64_t seed) {
  if (!g.symmetric()) throw UsageError("pair sampling needs an undirected graph");
  const std::size_t n = g.num_vertices();
  const auto comp = oracle::connected_components(g);
  std::size_t num_comp = 0;
  for (VertexId c : comp) num_comp = std::max<std::size_t>(num_comp, std::size_t{c} + 1);
  std::vector<std::vector<VertexId>> members(num_comp);
  for (VertexId v = 0; v < n; ++v) members[comp[v]].push_back(v);

  std::uint64_t total = 0;
  for (const auto& m : members) total += std::uint64_t{m.size()} * (m.size() - 1);

  PairSample sample;
  if (total == 0) {
    sample.warnings.push_back("graph has no pair of distinct connected vertices");
    sample.exhaustive = true;
    return sample;
  }
  if (count >= total) {
    if (count > total)
      sample.warnings.push_back("requested " + std::to_string(count) + " pairs but only " + std::to_string(total) +
                                " reachable ordered pairs exist; using all of them");
    sample.exhaustive = true;
    sample.pairs.reserve(total);
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v : members[comp[u]])
        if (v != u) sample.pairs.emplace_back(u, v);
    std::sort(sample.pairs.begin(), sample.pairs.end());
    return sample;
  }

  // u is drawn with weight (component size - 1), then v uniformly among its
  // other component members: uniform over reachable ordered pairs.
  std::vector<std::uint64_t> cumulative(n);
  std::uint64_t running = 0;
  for (VertexId v = 0; v < n; ++v) {
    running += members[comp[v]].size() - 1;
    cumulative[v] = running;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick_weight(0, total - 1);
  sample.pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t x = pick_weight(rng);
    const auto u = static_cast<VertexId>(std::upper_bound(cumulative.begin(), cumulative.end(), x) - cumulative.begin());
    const auto& m = members[comp[u]];
    std::uniform_int_distribution<std::size_t> pick_member(0, m.size() - 2);
    std::size_t j = pick_member(rng);
    // Skip over u itself.
    if (m[j] >= u) ++j;
    sample.pairs.emplace_back(u, m[j]);
  }
  return sample;
}

DistortionStats score_pairs(std::span<const VertexPair> pairs, std::span<const Distance> truth,
                            const DistanceFn& query) {
  if (pairs.size() != truth.size()) throw UsageError("pair and truth counts differ");
  std::vector<Distance> estimates(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t i = 0; i < pairs.size(); ++i) estimates[i] = query(pairs[i].first, pairs[i].second);

  DistortionStats stats;
  stats.pairs = pairs.size();
  double ratio_sum = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Distance est = estimates[i], real = truth[i];
    if (real == kUnreachable) throw UsageError("scored pair is not connected");
    if (est == kUnreachable) {
      ++stats.coverage_failures;
      continue;
    }
    ++stats.covered;
    if (est == real) ++stats.exact_hits;
    if (est < real) ++stats.underestimates;
    // Sampled pairs have u != v, so real >= 1.
    const double ratio = static_cast<double>(est) / std::max<Distance>(real, 1);
    ratio_sum += ratio;
    stats.max_distortion = std::max(stats.max_distortion, ratio);
  }
  if (stats.covered > 0) stats.epsilon_percent = (ratio_sum / static_cast<double>(stats.covered) - 1.0) * 100.0;
  return stats;
}

DistortionStats eval_distortion(const Graph& g, const DistanceFn& query, std::size_t pair_count, std::uint64_t seed) {
  auto sample = sample_reachable_pairs(g, pair_count, seed);
  const auto truth = oracle::pair_distances(g, sample.pairs);
  auto stats = score_pairs(sample.pairs, truth, query);
  stats.exhaustive = sample.exhaustive;
  stats.warnings = std::move(sample.warnings);
  return stats;
}

DistortionStats eval_distortion(const LandmarkIndex& idx, const Graph& g, std::size_t pair_count, std::uint64_t seed,
                                std::size_t tau) {
  if (idx.num_vertices() != g.num_vertices()) throw UsageError("index and graph vertex counts differ");
  return eval_distortion(
      g, [&](VertexId u, VertexId v) { return query_combined(idx, g, u, v, tau).estimate; }, pair_count, seed);
}

}  // namespace cbfs
