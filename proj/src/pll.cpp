#include "cbfs/pll.hpp"

#include <algorithm>
#include <memory>

#include "cbfs/byte_io.hpp"
#include "cbfs/parallel.hpp"

namespace cbfs {

std::vector<std::size_t> batch_schedule(std::size_t remaining) {
  constexpr std::size_t kCap = 1000;
  std::vector<std::size_t> sizes;
  double grow = 200.0;
  while (remaining > 0) {
    const auto want = std::min(static_cast<std::size_t>(grow), kCap);
    const std::size_t take = std::min(want, remaining);
    sizes.push_back(take);
    remaining -= take;
    if (want < kCap) grow *= 1.5;
  }
  return sizes;
}

TwoHopLabels::TwoHopLabels(std::size_t n, LandmarkIndex cluster_part, std::size_t k, std::uint32_t d)
    : cluster_part_(std::move(cluster_part)), k_(k), d_(d), hubs_(n) {
  if (cluster_part_.num_vertices() != n) throw UsageError("cluster part vertex count differs from the label set");
}

void TwoHopLabels::append(VertexId v, HubEntry e) {
  auto& list = hubs_[v];
  if (!list.empty() && list.back().rank >= e.rank) throw UsageError("hub ranks must be appended in increasing order");
  list.push_back(e);
}

std::size_t TwoHopLabels::total_hubs() const {
  std::size_t total = 0;
  for (const auto& list : hubs_) total += list.size();
  return total;
}

double TwoHopLabels::avg_labels() const {
  return hubs_.empty() ? 0.0 : static_cast<double>(total_hubs()) / static_cast<double>(hubs_.size());
}

std::vector<std::uint8_t> TwoHopLabels::encode() const {
  ByteWriter out;
  out.magic("CBFSPLL1");
  out.u32(kVersion);
  out.u64(hubs_.size());
  out.u32(static_cast<std::uint32_t>(cluster_part_.num_clusters()));
  out.u32(static_cast<std::uint32_t>(k_));
  out.u32(d_);
  cluster_part_.encode_into(out);
  for (const auto& list : hubs_) {
    out.u32(static_cast<std::uint32_t>(list.size()));
    for (const auto& e : list) {
      out.u32(e.rank);
      out.u16(e.dist);
    }
  }
  return std::move(out.bytes());
}

TwoHopLabels TwoHopLabels::decode(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes, "2-hop index");
  in.expect_magic("CBFSPLL1");
  const std::uint32_t version = in.u32();
  if (version != kVersion) throw DataError("2-hop index: unsupported version " + std::to_string(version));
  const std::uint64_t n = in.u64();
  const std::uint32_t r = in.u32();
  const std::uint32_t k = in.u32();
  const std::uint32_t d = in.u32();
  auto part = LandmarkIndex::decode_from(in);
  if (part.num_vertices() != n || part.num_clusters() != r)
    throw DataError("2-hop index: header disagrees with the embedded cluster part");
  if (n > in.remaining() / 4) throw DataError("2-hop index: truncated");
  TwoHopLabels labels(n, std::move(part), k, d);
  for (std::uint64_t v = 0; v < n; ++v) {
    const std::uint32_t count = in.u32();
    if (count > in.remaining() / 6) throw DataError("2-hop index: truncated");
    auto& list = labels.hubs_[v];
    list.resize(count);
    for (auto& e : list) {
      e.rank = in.u32();
      e.dist = in.u16();
      if (e.rank >= n) throw DataError("2-hop index: hub rank out of range");
    }
    for (std::size_t i = 1; i < list.size(); ++i)
      if (list[i - 1].rank >= list[i].rank) throw DataError("2-hop index: hub list not strictly increasing");
  }
  if (!in.at_end()) throw DataError("2-hop index: trailing bytes");
  return labels;
}

void TwoHopLabels::save(const std::filesystem::path& path) const { write_file_bytes(path, encode()); }

TwoHopLabels TwoHopLabels::load(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return decode(bytes);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

namespace {

// Per-worker buffers for pruned BFS, cleared after each run.
struct Scratch {
  explicit Scratch(std::size_t n) : by_rank(n, kUnreachable), dist(n, kUnreachable) {}
  std::vector<Distance> by_rank;  // source's committed hub distances, by hub rank
  std::vector<Distance> dist;
  std::vector<VertexId> queue;
};

// Clusters whose deltas never saturated. Only these answer every pair
// through their sources exactly, so only these may justify pruning.
std::vector<std::size_t> exact_clusters(const LandmarkIndex& part) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < part.num_clusters(); ++c) {
    bool saturated = false;
    for (VertexId v = 0; v < part.num_vertices() && !saturated; ++v)
      saturated = part.delta_byte(v, c) == kRecordSaturated;
    if (!saturated) out.push_back(c);
  }
  return out;
}

std::vector<std::pair<VertexId, Distance>> run_pruned(const Graph& g, VertexId source, const TwoHopLabels& labels,
                                                      std::span<const std::size_t> exact, Scratch& s) {
  const auto& part = labels.cluster_part();
  const auto source_hubs = labels.hubs(source);
  for (const auto& e : source_hubs) s.by_rank[e.rank] = e.dist;

  std::vector<std::pair<VertexId, Distance>> added;
  s.queue.clear();
  s.queue.push_back(source);
  s.dist[source] = 0;
  for (std::size_t head = 0; head < s.queue.size(); ++head) {
    const VertexId x = s.queue[head];
    const Distance dx = s.dist[x];
    if (x != source) {
      Distance known = kUnreachable;
      for (const auto& e : labels.hubs(x))
        if (s.by_rank[e.rank] != kUnreachable) known = std::min(known, s.by_rank[e.rank] + e.dist);
      for (std::size_t i = 0; i < exact.size() && known > dx; ++i)
        known = std::min(known, per_cluster_estimate(part, exact[i], source, x));
      if (known <= dx) continue;
    }
    if (dx > std::numeric_limits<std::uint16_t>::max()) throw DataError("hop distance exceeds the 16-bit label field");
    added.emplace_back(x, dx);
    for (VertexId y : g.out_neighbors(x))
      if (s.dist[y] == kUnreachable) {
        s.dist[y] = dx + 1;
        s.queue.push_back(y);
      }
  }

  for (VertexId x : s.queue) s.dist[x] = kUnreachable;
  for (const auto& e : source_hubs) s.by_rank[e.rank] = kUnreachable;
  return added;
}

}  // namespace

std::vector<std::pair<VertexId, Distance>> pruned_bfs(const Graph& g, VertexId source, const TwoHopLabels& labels) {
  if (source >= g.num_vertices() || labels.num_vertices() != g.num_vertices())
    throw UsageError("pruned BFS source or label set does not match the graph");
  Scratch s(g.num_vertices());
  const auto exact = exact_clusters(labels.cluster_part());
  return run_pruned(g, source, labels, exact, s);
}

TwoHopLabels build_pll(const Graph& g, const PllConfig& cfg, PllStats* stats) {
  if (!g.symmetric()) throw UsageError("2-hop labeling needs an undirected graph");
  const std::size_t n = g.num_vertices();
  PllStats local;
  PllStats& st = stats ? *stats : local;
  st = {};

  // Phase 1: cluster part.
  std::vector<Cluster> clusters;
  if (cfg.r > 0 && n > 0) {
    auto sel = select_clusters(g, SelectionConfig{cfg.r, cfg.k, cfg.d, cfg.hops});
    clusters = std::move(sel.clusters);
    st.warnings = std::move(sel.warnings);
  }
  LandmarkIndex part = build_ll_index(g, clusters);

  // Sources of exact clusters are covered by the cluster part. A cluster
  // with a saturated delta is skipped by queries for the far vertices, so
  // its sources get ordinary labels and it never justifies pruning.
  const auto exact = exact_clusters(part);
  std::vector<std::uint8_t> skip(n, 0);
  for (std::size_t c : exact)
    for (VertexId s : part.cluster(c).sources) skip[s] = 1;
  for (std::size_t c = 0; c < part.num_clusters(); ++c) st.cluster_sources_rerun += part.cluster(c).size();
  for (VertexId v = 0; v < n; ++v) st.cluster_sources_rerun -= skip[v];

  TwoHopLabels labels(n, std::move(part), cfg.k, cfg.d);
  const auto order = order_by_degree(g);
  std::vector<std::uint32_t> phase2;  // ranks
  for (std::uint32_t rank = 0; rank < order.size(); ++rank)
    if (!skip[order[rank]]) phase2.push_back(rank);
  st.phase2_sources = phase2.size();
  st.batches = cfg.sequential ? std::vector<std::size_t>(phase2.size(), 1) : batch_schedule(phase2.size());

  // Phase 2: batches in sequence, pruned BFS runs inside a batch in parallel
  // against the labels committed before the batch started.
  std::vector<std::unique_ptr<Scratch>> scratch;
  for (int w = 0; w < parallel::max_workers(); ++w) scratch.push_back(std::make_unique<Scratch>(n));
  std::size_t begin = 0;
  for (std::size_t size : st.batches) {
    std::vector<std::vector<std::pair<VertexId, Distance>>> additions(size);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < size; ++i) {
      Scratch& s = *scratch[static_cast<std::size_t>(parallel::worker_id())];
      additions[i] = run_pruned(g, order[phase2[begin + i]], labels, exact, s);
    }
    for (std::size_t i = 0; i < size; ++i)
      for (const auto& [x, dx] : additions[i])
        labels.append(x, HubEntry{phase2[begin + i], static_cast<std::uint16_t>(dx)});
    begin += size;
  }
  return labels;
}

Distance query_pll(const TwoHopLabels& labels, VertexId u, VertexId v) {
  if (u >= labels.num_vertices() || v >= labels.num_vertices()) throw UsageError("query vertex out of range");
  Distance best = kUnreachable;
  const auto a = labels.hubs(u), b = labels.hubs(v);
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i].rank < b[j].rank) {
      ++i;
    } else if (a[i].rank > b[j].rank) {
      ++j;
    } else {
      best = std::min(best, Distance{a[i].dist} + Distance{b[j].dist});
      ++i;
      ++j;
    }
  }
  if (labels.cluster_part().num_clusters() > 0) best = std::min(best, query_ll(labels.cluster_part(), u, v).estimate);
  return best;
}

}  // namespace cbfs
