#include "cbfs/landmark.hpp"

#include <algorithm>

#include "cbfs/bfs.hpp"
#include "cbfs/landmark_record.hpp"

namespace cbfs {

std::size_t cluster_record_bytes(std::size_t k, std::uint32_t d) { return 1 + std::size_t{d} * ((k + 7) / 8); }

std::size_t budget_to_cluster_count(std::size_t budget, std::size_t k, std::uint32_t d) {
  if (k == 0) throw UsageError("cluster capacity k must be at least 1");
  const std::size_t per_cluster = cluster_record_bytes(k, d);
  if (budget < per_cluster)
    throw UsageError("budget of " + std::to_string(budget) + " bytes per vertex is below one cluster (" +
                     std::to_string(per_cluster) + " bytes)");
  return budget / per_cluster;
}

namespace record {

void unpack(std::span<const std::uint8_t> rec, std::size_t k, std::uint32_t d, std::span<Word> out) {
  const std::size_t w = words_for(k);
  const std::size_t stored = (k + 7) / 8;
  std::fill(out.begin(), out.end(), Word{0});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t b = 0; b < stored; ++b)
      out[i * w + b / 8] |= Word{rec[1 + i * stored + b]} << (8 * (b % 8));
  // Subset d: every source not placed in an earlier subset.
  for (std::size_t x = 0; x < w; ++x) {
    Word rest = ~Word{0};
    if (x + 1 == w && k % kWordBits) rest = (Word{1} << (k % kWordBits)) - 1;
    for (std::size_t i = 0; i < d; ++i) rest &= ~out[i * w + x];
    out[d * w + x] = rest;
  }
}

}  // namespace record

LandmarkIndex::LandmarkIndex(std::size_t n, std::vector<Cluster> clusters)
    : n_(n), clusters_(std::move(clusters)) {
  for (const auto& c : clusters_) {
    if (c.sources.empty()) throw UsageError("index cluster has no sources");
    offsets_.push_back(stride_);
    stride_ += cluster_record_bytes(c.size(), c.d);
  }
  bytes_.assign(n_ * stride_, 0);
  for (VertexId v = 0; v < n_; ++v)
    for (std::size_t c = 0; c < clusters_.size(); ++c) bytes_[v * stride_ + offsets_[c]] = kRecordUnreachable;
  star_.assign(clusters_.size(), 0);
}

void LandmarkIndex::store(std::size_t c, const ClusterDistances& dist) {
  const Cluster& cl = clusters_[c];
  if (dist.num_vertices() != n_ || dist.capacity() != cl.size() || dist.d() != cl.d)
    throw UsageError("cluster distances do not match the index cluster shape");
  const std::size_t stored = (cl.size() + 7) / 8;
#pragma omp parallel for schedule(static)
  for (std::size_t v = 0; v < n_; ++v) {
    std::uint8_t* rec = bytes_.data() + v * stride_ + offsets_[c];
    const std::uint16_t delta = dist.deltas()[v];
    std::fill(rec, rec + cluster_record_bytes(cl.size(), cl.d), std::uint8_t{0});
    if (delta == kDeltaUnreachable) {
      rec[0] = kRecordUnreachable;
      continue;
    }
    rec[0] = static_cast<std::uint8_t>(std::min<std::uint16_t>(delta, kRecordSaturated));
    const auto vec = dist[static_cast<VertexId>(v)];
    for (std::size_t i = 0; i < cl.d; ++i) {
      const auto words = vec.subset_words(i);
      for (std::size_t b = 0; b < stored; ++b)
        rec[1 + i * stored + b] = static_cast<std::uint8_t>(words[b / 8] >> (8 * (b % 8)));
    }
  }
  refresh_star(c);
}

void LandmarkIndex::refresh_star(std::size_t c) {
  const Cluster& cl = clusters_[c];
  star_[c] = 0;
  if (cl.sources[0] >= n_) return;
  const auto rec = record(cl.sources[0], c);
  if (rec[0] != 0) return;
  const std::size_t w = words_for(cl.size());
  std::vector<Word> subsets((cl.d + 1) * w);
  record::unpack(rec, cl.size(), cl.d, subsets);
  if (!bits::test(std::span<const Word>(subsets).first(w), 0)) return;
  // Everything outside subsets 0 and 1 must be empty.
  for (std::size_t i = 2; i <= cl.d; ++i)
    if (bits::any(std::span<const Word>(subsets).subspan(i * w, w))) return;
  star_[c] = 1;
}

ClusterDistances LandmarkIndex::expand(std::size_t c) const {
  const Cluster& cl = clusters_[c];
  ClusterDistances out(n_, cl.size(), cl.d);
  auto& deltas = out.mutable_deltas();
  auto& words = out.mutable_subset_words();
  const std::size_t per_vertex = out.words_per_vertex();
#pragma omp parallel for schedule(static)
  for (std::size_t v = 0; v < n_; ++v) {
    const auto rec = record(static_cast<VertexId>(v), c);
    if (rec[0] == kRecordUnreachable) continue;
    deltas[v] = rec[0];
    record::unpack(rec, cl.size(), cl.d, std::span<Word>(words).subspan(v * per_vertex, per_vertex));
  }
  return out;
}

void LandmarkIndex::encode_into(ByteWriter& out) const {
  out.magic("CBFSLL01");
  out.u32(kVersion);
  out.u64(n_);
  out.u32(static_cast<std::uint32_t>(clusters_.size()));
  for (const auto& c : clusters_) {
    out.u32(static_cast<std::uint32_t>(c.size()));
    out.u32(c.d);
  }
  for (const auto& c : clusters_)
    for (VertexId s : c.sources) out.u32(s);
  out.raw(bytes_);
}

LandmarkIndex LandmarkIndex::decode_from(ByteReader& in) {
  in.expect_magic("CBFSLL01");
  const std::uint32_t version = in.u32();
  if (version != kVersion) throw DataError(in.what() + ": unsupported index version " + std::to_string(version));
  const std::uint64_t n = in.u64();
  const std::uint32_t r = in.u32();
  std::vector<Cluster> clusters(r);
  std::uint64_t stride = 0;
  for (auto& c : clusters) {
    const std::uint32_t k = in.u32();
    c.d = in.u32();
    if (k == 0) throw DataError(in.what() + ": cluster with zero sources");
    // Guards the allocation below against corrupt headers.
    if (k > in.remaining() / 4) throw DataError(in.what() + ": truncated");
    c.sources.resize(k);
    stride += cluster_record_bytes(k, c.d);
  }
  for (auto& c : clusters)
    for (auto& s : c.sources) {
      s = in.u32();
      if (s >= n) throw DataError(in.what() + ": cluster source out of range");
    }
  if (stride != 0 && n > in.remaining() / stride) throw DataError(in.what() + ": truncated");
  LandmarkIndex idx(n, std::move(clusters));
  const auto body = in.raw(n * stride);
  std::copy(body.begin(), body.end(), idx.bytes_.begin());
  for (std::size_t c = 0; c < idx.clusters_.size(); ++c) idx.refresh_star(c);
  return idx;
}

std::vector<std::uint8_t> LandmarkIndex::encode() const {
  ByteWriter out;
  encode_into(out);
  return std::move(out.bytes());
}

LandmarkIndex LandmarkIndex::decode(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes, "landmark index");
  auto idx = decode_from(in);
  if (!in.at_end()) throw DataError("landmark index: trailing bytes");
  return idx;
}

void LandmarkIndex::save(const std::filesystem::path& path) const { write_file_bytes(path, encode()); }

LandmarkIndex LandmarkIndex::load(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return decode(bytes);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

LandmarkIndex build_ll_index(const Graph& g, std::span<const Cluster> clusters) {
  if (!g.symmetric()) throw UsageError("landmark index needs an undirected graph");
  LandmarkIndex idx(g.num_vertices(), std::vector<Cluster>(clusters.begin(), clusters.end()));
  for (std::size_t c = 0; c < clusters.size(); ++c) idx.store(c, cluster_bfs(g, clusters[c]));
  return idx;
}

void PlainIndex::set(VertexId v, std::size_t l, Distance dist) {
  bytes_[v * landmarks_.size() + l] =
      dist == kUnreachable ? kRecordUnreachable : static_cast<std::uint8_t>(std::min<Distance>(dist, kRecordSaturated));
}

PlainIndex build_plain_ll_index(const Graph& g, std::span<const VertexId> landmarks) {
  PlainIndex idx(g.num_vertices(), std::vector<VertexId>(landmarks.begin(), landmarks.end()));
  for (std::size_t l = 0; l < landmarks.size(); ++l) {
    const auto dist = plain_bfs(g, landmarks[l]);
#pragma omp parallel for schedule(static)
    for (std::size_t v = 0; v < dist.size(); ++v) idx.set(static_cast<VertexId>(v), l, dist[v]);
  }
  return idx;
}

}  // namespace cbfs
