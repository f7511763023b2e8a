#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "cbfs/byte_io.hpp"
#include "cbfs/graph.hpp"

namespace cbfs {

namespace {

constexpr std::string_view kGraphMagic = "CBFSG001";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("short write to " + path.string());
}

Graph parse_edge_list(std::istream& in, bool directed) {
  std::unordered_map<std::uint64_t, VertexId> remap;
  std::vector<Graph::Arc> arcs;
  auto intern = [&](std::uint64_t raw) {
    auto [it, fresh] = remap.try_emplace(raw, static_cast<VertexId>(remap.size()));
    if (fresh && remap.size() > std::numeric_limits<VertexId>::max())
      throw DataError("too many distinct vertex ids");
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p != end && is_space(*p)) ++p;
    if (p == end || *p == '#') continue;

    std::uint64_t ids[2];
    for (auto& id : ids) {
      while (p != end && is_space(*p)) ++p;
      auto [next, ec] = std::from_chars(p, end, id);
      if (ec != std::errc() || (next != end && !is_space(*next)))
        throw DataError("line " + std::to_string(line_no) + ": expected two non-negative integer ids");
      p = next;
    }
    while (p != end && is_space(*p)) ++p;
    if (p != end)
      throw DataError("line " + std::to_string(line_no) + ": unexpected trailing text");
    VertexId u = intern(ids[0]);
    VertexId v = intern(ids[1]);
    arcs.emplace_back(u, v);
  }
  if (in.bad()) throw DataError("read error after line " + std::to_string(line_no));
  return Graph::from_arcs(remap.size(), std::move(arcs), !directed);
}

Graph load_edge_list(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return parse_edge_list(in, directed);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_edge_list(const Graph& g, std::ostream& out) {
  const auto n = static_cast<VertexId>(g.num_vertices());
  out << "# n=" << n << " arcs=" << g.num_arcs() << (g.symmetric() ? " undirected\n" : " directed\n");
  for (VertexId v = 0; v < n; ++v) out << v << ' ' << v << '\n';
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v : g.out_neighbors(u))
      if (!g.symmetric() || u < v) out << u << ' ' << v << '\n';
}

std::vector<std::uint8_t> encode_graph(const Graph& g) {
  ByteWriter w;
  w.magic(kGraphMagic);
  w.u64(g.num_vertices());
  w.u64(g.num_arcs());
  w.u64(g.symmetric() ? 1 : 0);
  for (auto x : g.out_offsets()) w.u64(x);
  for (auto x : g.out_targets()) w.u32(x);
  if (!g.symmetric()) {
    for (auto x : g.in_offsets()) w.u64(x);
    for (auto x : g.in_targets()) w.u32(x);
  }
  return std::move(w.bytes());
}

Graph decode_graph(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "graph cache");
  r.expect_magic(kGraphMagic);
  const std::uint64_t n = r.u64();
  const std::uint64_t m = r.u64();
  const std::uint64_t flag = r.u64();
  if (flag > 1) throw DataError("graph cache: bad symmetric flag");
  // Every vertex costs 8 bytes and every arc 4, so implausible headers fail
  // before any allocation.
  if (n >= r.remaining() / 8 || m > r.remaining() / 4) throw DataError("graph cache: truncated");

  auto read_csr = [&](std::vector<std::uint64_t>& off, std::vector<VertexId>& tgt) {
    off.resize(n + 1);
    for (auto& x : off) x = r.u64();
    tgt.resize(m);
    for (auto& x : tgt) x = r.u32();
  };
  std::vector<std::uint64_t> out_off, in_off;
  std::vector<VertexId> out_tgt, in_tgt;
  read_csr(out_off, out_tgt);
  if (flag == 0) read_csr(in_off, in_tgt);
  if (!r.at_end()) throw DataError("graph cache: trailing bytes");

  Graph g = Graph::from_csr(std::move(out_off), std::move(out_tgt), std::move(in_off),
                            std::move(in_tgt), flag == 1);
  if (auto report = validate(g); !report)
    throw DataError("graph cache: " + report.violation);
  return g;
}

void save_graph_cache(const Graph& g, const std::filesystem::path& path) {
  write_file_bytes(path, encode_graph(g));
}

Graph load_graph_cache(const std::filesystem::path& path) {
  try {
    return decode_graph(read_file_bytes(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

Graph load_graph(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  char head[8] = {};
  in.read(head, sizeof head);
  if (in.gcount() == 8 && std::string_view(head, 8) == kGraphMagic) return load_graph_cache(path);
  return load_edge_list(path, directed);
}

}  // namespace cbfs
