#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cbfs/types.hpp"

namespace cbfs {

// Immutable CSR adjacency. Symmetric graphs share one arc array for both
// directions; directed graphs carry a separate reversed CSR.
class Graph {
 public:
  using Arc = std::pair<VertexId, VertexId>;

  Graph() : out_offsets_{0} {}

  // Builds a simple graph over vertices [0, n): self-loops are dropped,
  // duplicates removed, neighbor lists sorted. With `symmetrize` every arc
  // gets its reverse and the result is flagged symmetric.
  static Graph from_arcs(std::size_t n, std::vector<Arc> arcs, bool symmetrize);

  // Adopts raw CSR arrays without checking them. Pass empty in_* arrays for a
  // symmetric graph. Intended for tests and deserialization; run validate()
  // on anything that did not come from from_arcs().
  static Graph from_csr(std::vector<std::uint64_t> out_offsets,
                        std::vector<VertexId> out_targets,
                        std::vector<std::uint64_t> in_offsets,
                        std::vector<VertexId> in_targets, bool symmetric);

  std::size_t num_vertices() const { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
  std::size_t num_arcs() const { return out_targets_.size(); }
  bool symmetric() const { return symmetric_; }

  std::span<const VertexId> out_neighbors(VertexId v) const {
    return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const VertexId> in_neighbors(VertexId v) const {
    if (symmetric_) return out_neighbors(v);
    return {in_targets_.data() + in_offsets_[v], in_targets_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(VertexId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(VertexId v) const { return in_neighbors(v).size(); }

  const std::vector<std::uint64_t>& out_offsets() const { return out_offsets_; }
  const std::vector<VertexId>& out_targets() const { return out_targets_; }
  const std::vector<std::uint64_t>& in_offsets() const { return in_offsets_; }
  const std::vector<VertexId>& in_targets() const { return in_targets_; }

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::uint64_t> out_offsets_;
  std::vector<VertexId> out_targets_;
  std::vector<std::uint64_t> in_offsets_;
  std::vector<VertexId> in_targets_;
  bool symmetric_ = true;
};

// All vertices by out-degree descending, ties by ascending id.
std::vector<VertexId> order_by_degree(const Graph& g);

struct ValidationReport {
  bool ok = true;
  std::string violation;  // first violated invariant, empty when ok

  explicit operator bool() const { return ok; }
};

ValidationReport validate(const Graph& g);

// Text edge lists: one "u v" pair per line, '#' starts a comment line. IDs
// are remapped to a dense range in order of first appearance.
Graph parse_edge_list(std::istream& in, bool directed);
Graph load_edge_list(const std::filesystem::path& path, bool directed);

// Writes a list that reloads to an identical graph: "v v" declarations for
// every vertex in id order (dropped as self-loops, but they pin the id
// assignment and keep isolated vertices), followed by the arcs.
void write_edge_list(const Graph& g, std::ostream& out);

// Binary cache, magic "CBFSG001", little-endian.
std::vector<std::uint8_t> encode_graph(const Graph& g);
Graph decode_graph(std::span<const std::uint8_t> bytes);
void save_graph_cache(const Graph& g, const std::filesystem::path& path);
Graph load_graph_cache(const std::filesystem::path& path);

// Loads either format, chosen by the file's leading magic bytes.
Graph load_graph(const std::filesystem::path& path, bool directed);

}  // namespace cbfs
