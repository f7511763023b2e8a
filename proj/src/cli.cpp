#include "cbfs/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include "cbfs/bench.hpp"
#include "cbfs/bfs.hpp"
#include "cbfs/byte_io.hpp"
#include "cbfs/cluster_bfs.hpp"
#include "cbfs/cluster_select.hpp"
#include "cbfs/distortion.hpp"
#include "cbfs/landmark.hpp"
#include "cbfs/parallel.hpp"
#include "cbfs/pll.hpp"

namespace cbfs {

namespace {

struct Common {
  std::string graph;
  bool directed = false;
  int threads = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "text";
};

struct Options {
  Common common;
  std::size_t k = 64;
  std::uint32_t d = 2;
  std::optional<VertexId> center;
  std::string cluster_file;
  std::string dump = "distances";
  std::size_t budget = 1024;
  std::string hops = "through";
  std::string index;
  std::string pairs_file;
  std::size_t pair_count = 100000;
  std::size_t tau = 0;
  bool star = false;
  std::size_t r = 0;
  bool sequential = false;
  std::vector<int> thread_list;
  std::size_t reps = 10;
  std::string name;
};

void add_common(CLI::App* cmd, Common& c, bool needs_graph) {
  auto* g = cmd->add_option("--graph", c.graph, "Edge list or binary graph cache");
  if (needs_graph) g->required();
  cmd->add_flag("--directed", c.directed, "Treat an edge list as directed");
  cmd->add_option("--threads", c.threads, "Worker threads (default: all)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--out", c.out, "Output path");
  cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "csv"}));
}

HopPolicy parse_hops(const std::string& s) { return s == "unmarked" ? HopPolicy::kUnmarkedOnly : HopPolicy::kThroughMarked; }

std::string dist_text(Distance d) { return d == kUnreachable ? "inf" : std::to_string(d); }

// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DataError("cannot open " + path + " for writing");
    }
    out_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

std::vector<VertexPair> read_pairs(std::istream& in, std::size_t n, const std::string& what) {
  std::vector<VertexPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::int64_t u = 0, v = 0;
    if (!(fields >> u)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
      throw DataError(what + " line " + std::to_string(line_no) + ": expected \"u v\"");
    }
    if (!(fields >> v)) throw DataError(what + " line " + std::to_string(line_no) + ": expected \"u v\"");
    if (u < 0 || v < 0 || static_cast<std::uint64_t>(u) >= n || static_cast<std::uint64_t>(v) >= n)
      throw DataError(what + " line " + std::to_string(line_no) + ": vertex id out of range");
    pairs.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  return pairs;
}

std::vector<VertexPair> load_pairs(const Options& o, std::istream& in, std::size_t n) {
  if (o.pairs_file.empty() || o.pairs_file == "-") return read_pairs(in, n, "stdin");
  std::ifstream file(o.pairs_file);
  if (!file) throw DataError("cannot open pair file " + o.pairs_file);
  return read_pairs(file, n, o.pairs_file);
}

bool has_magic(const std::string& path, std::string_view magic) {
  std::ifstream f(path, std::ios::binary);
  std::string head(magic.size(), '\0');
  f.read(head.data(), static_cast<std::streamsize>(head.size()));
  return f && head == magic;
}

int cmd_convert(const Options& o, std::ostream& out) {
  if (o.common.out.empty()) throw UsageError("convert needs --out");
  const Graph g = load_graph(o.common.graph, o.common.directed);
  save_graph_cache(g, o.common.out);
  out << "n=" << g.num_vertices() << " m=" << (g.symmetric() ? g.num_arcs() / 2 : g.num_arcs()) << '\n';
  return 0;
}

Cluster pick_cluster(const Graph& g, const Options& o) {
  if (!o.cluster_file.empty()) {
    std::ifstream f(o.cluster_file);
    if (!f) throw UsageError("cannot open cluster file " + o.cluster_file);
    std::vector<Cluster> clusters;
    try {
      clusters = read_clusters(f);
    } catch (const DataError& e) {
      throw UsageError(std::string("invalid cluster file: ") + e.what());
    }
    if (clusters.empty()) throw UsageError("cluster file holds no cluster");
    if (!validate_cluster(g, clusters.front()))
      throw UsageError("invalid cluster file: sources are not pairwise within d hops");
    return clusters.front();
  }
  if (o.center) return grow_cluster(g, *o.center, o.k, o.d);
  auto sel = select_clusters(g, SelectionConfig{1, o.k, o.d});
  return sel.clusters.front();
}

int cmd_cbfs(const Options& o, std::ostream& stdout_) {
  const Graph g = load_graph(o.common.graph, o.common.directed);
  if (g.num_vertices() == 0) throw DataError("graph has no vertices");
  const Cluster c = pick_cluster(g, o);
  const ClusterDistances dist = cluster_bfs(g, c);
  Sink sink(o.common.out, stdout_);
  std::ostream& out = *sink;
  const bool csv = o.common.format == "csv";
  const bool vectors = o.dump == "vectors";
  if (csv) {
    out << (vectors ? "vertex,delta" : "vertex,source,distance");
    if (vectors)
      for (std::uint32_t i = 0; i <= c.d; ++i) out << ",subset" << i;
    out << '\n';
  } else {
    out << "# d=" << c.d << " sources";
    for (VertexId s : c.sources) out << ' ' << s;
    out << '\n';
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto vec = dist[v];
    if (vectors) {
      out << v << (csv ? ',' : ' ') << (vec.reachable() ? std::to_string(vec.delta()) : "inf");
      for (std::size_t i = 0; i < vec.subset_count(); ++i) out << (csv ? ',' : ' ') << vec.subset(i).to_string();
      out << '\n';
    } else if (csv) {
      for (std::size_t j = 0; j < c.size(); ++j) out << v << ',' << c.sources[j] << ',' << dist_text(dist.decode(v, j)) << '\n';
    } else {
      out << v;
      for (std::size_t j = 0; j < c.size(); ++j) out << ' ' << dist_text(dist.decode(v, j));
      out << '\n';
    }
  }
  return 0;
}

LandmarkIndex build_budgeted(const Graph& g, const Options& o, std::ostream& out, std::ostream& err) {
  const std::size_t r = budget_to_cluster_count(o.budget, o.k, o.d);
  out << "r=" << r << '\n';
  auto sel = select_clusters(g, SelectionConfig{r, o.k, o.d, parse_hops(o.hops)});
  for (const auto& w : sel.warnings) err << "warning: " << w << '\n';
  return build_ll_index(g, sel.clusters);
}

int cmd_build_ll(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.common.out.empty()) throw UsageError("build-ll needs --out");
  // Reject a budget below one cluster before loading the graph.
  (void)budget_to_cluster_count(o.budget, o.k, o.d);
  const Graph g = load_graph(o.common.graph, o.common.directed);
  const LandmarkIndex idx = build_budgeted(g, o, out, err);
  idx.save(o.common.out);
  out << "clusters=" << idx.num_clusters() << " bytes_per_vertex=" << idx.bytes_per_vertex() << '\n';
  return 0;
}

int cmd_query_ll(const Options& o, std::istream& in, std::ostream& stdout_) {
  const LandmarkIndex idx = LandmarkIndex::load(o.index);
  std::optional<Graph> g;
  if (o.tau > 0) {
    if (o.common.graph.empty()) throw UsageError("--tau needs --graph");
    g = load_graph(o.common.graph, o.common.directed);
    if (g->num_vertices() != idx.num_vertices()) throw DataError("graph and index vertex counts differ");
  }
  const auto pairs = load_pairs(o, in, idx.num_vertices());
  Sink sink(o.common.out, stdout_);
  std::ostream& out = *sink;
  const bool csv = o.common.format == "csv";
  if (csv) out << "u,v,estimate,witness\n";
  QueryOptions qo{o.star};
  for (const auto& [u, v] : pairs) {
    const QueryResult res = g ? query_combined(idx, *g, u, v, o.tau, qo) : query_ll(idx, u, v, qo);
    std::string witness = "none";
    if (res.witness.kind == QueryWitness::Kind::kCluster)
      witness = "cluster" + std::to_string(res.witness.cluster) + ":" + std::to_string(res.witness.source_index);
    else if (res.witness.kind == QueryWitness::Kind::kBidirectional)
      witness = "bidirectional";
    if (csv)
      out << u << ',' << v << ',' << dist_text(res.estimate) << ',' << witness << '\n';
    else
      out << u << ' ' << v << ' ' << dist_text(res.estimate) << '\n';
  }
  return 0;
}

void print_stats(std::ostream& out, const DistortionStats& s, bool csv) {
  if (csv) {
    out << "pairs,covered,coverage_failures,exact_hits,underestimates,epsilon_percent,max_distortion,exact_rate,"
           "exhaustive\n";
    out << s.pairs << ',' << s.covered << ',' << s.coverage_failures << ',' << s.exact_hits << ','
        << s.underestimates << ',';
    if (s.epsilon_percent) out << std::setprecision(9) << *s.epsilon_percent;
    out << ',' << s.max_distortion << ',' << s.exact_rate() << ',' << (s.exhaustive ? 1 : 0) << '\n';
    return;
  }
  out << "pairs=" << s.pairs << (s.exhaustive ? " (all)" : "") << ' ';
  if (s.epsilon_percent)
    out << "ε=" << std::fixed << std::setprecision(1) << *s.epsilon_percent << '%';
  else
    out << "ε=n/a";
  out << std::fixed << std::setprecision(3) << " max=" << s.max_distortion << " exact=" << std::setprecision(1)
      << 100.0 * s.exact_rate() << "% failures=" << s.coverage_failures;
  if (s.underestimates) out << " UNDERESTIMATES=" << s.underestimates;
  out << '\n';
  out.unsetf(std::ios::floatfield);
}

int cmd_eval(const Options& o, std::ostream& stdout_, std::ostream& err) {
  const Graph g = load_graph(o.common.graph, o.common.directed);
  Sink sink(o.common.out, stdout_);
  std::ostream& out = *sink;
  DistortionStats stats;
  if (!o.index.empty() && has_magic(o.index, "CBFSPLL1")) {
    const TwoHopLabels labels = TwoHopLabels::load(o.index);
    if (labels.num_vertices() != g.num_vertices()) throw DataError("graph and index vertex counts differ");
    stats = eval_distortion(
        g, [&](VertexId u, VertexId v) { return query_pll(labels, u, v); }, o.pair_count, o.common.seed);
  } else {
    const LandmarkIndex idx = o.index.empty() ? build_budgeted(g, o, err, err) : LandmarkIndex::load(o.index);
    if (idx.num_vertices() != g.num_vertices()) throw DataError("graph and index vertex counts differ");
    stats = eval_distortion(idx, g, o.pair_count, o.common.seed, o.tau);
  }
  for (const auto& w : stats.warnings) err << "warning: " << w << '\n';
  print_stats(out, stats, o.common.format == "csv");
  return 0;
}

int cmd_build_pll(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.common.out.empty()) throw UsageError("build-pll needs --out");
  const Graph g = load_graph(o.common.graph, o.common.directed);
  PllStats st;
  const TwoHopLabels labels = build_pll(g, PllConfig{o.r, o.k, o.d, parse_hops(o.hops), o.sequential}, &st);
  for (const auto& w : st.warnings) err << "warning: " << w << '\n';
  labels.save(o.common.out);
  out << "avg_labels=" << std::fixed << std::setprecision(2) << labels.avg_labels()
      << " index_bytes=" << labels.index_bytes() << " batches=" << st.batches.size() << '\n';
  out.unsetf(std::ios::floatfield);
  return 0;
}

int cmd_query_pll(const Options& o, std::istream& in, std::ostream& stdout_) {
  const TwoHopLabels labels = TwoHopLabels::load(o.index);
  const auto pairs = load_pairs(o, in, labels.num_vertices());
  Sink sink(o.common.out, stdout_);
  std::ostream& out = *sink;
  const bool csv = o.common.format == "csv";
  if (csv) out << "u,v,distance\n";
  for (const auto& [u, v] : pairs) out << u << (csv ? ',' : ' ') << v << (csv ? ',' : ' ') << dist_text(query_pll(labels, u, v)) << '\n';
  return 0;
}

int cmd_bench(const Options& o, std::ostream& stdout_) {
  const Graph g = load_graph(o.common.graph, o.common.directed);
  BenchConfig cfg;
  cfg.graph_name = o.name.empty() ? std::filesystem::path(o.common.graph).filename().string() : o.name;
  cfg.k = o.k;
  cfg.d = o.d;
  cfg.reps = o.reps;
  cfg.threads = o.thread_list.empty() ? std::vector<int>{parallel::max_workers()} : o.thread_list;
  const BenchReport report = run_bench(g, cfg);
  Sink sink(o.common.out, stdout_);
  if (o.common.format == "csv")
    write_bench_csv(*sink, report);
  else
    write_bench_text(*sink, report);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cluster-BFS distance tools"};
  app.require_subcommand(1);
  Options o;

  auto* convert = app.add_subcommand("convert", "Edge list to binary graph cache");
  add_common(convert, o.common, true);

  auto* cbfs = app.add_subcommand("cbfs", "Cluster-BFS from one cluster, dumped per vertex");
  add_common(cbfs, o.common, true);
  cbfs->add_option("--k", o.k, "Cluster capacity")->check(CLI::PositiveNumber);
  cbfs->add_option("--d", o.d, "Cluster diameter bound");
  auto* center = cbfs->add_option("--center", o.center, "Grow the cluster around this vertex");
  cbfs->add_option("--cluster-file", o.cluster_file, "Read the cluster from a file")->excludes(center);
  cbfs->add_option("--dump", o.dump, "What to print")->check(CLI::IsMember({"distances", "vectors"}));

  auto* build_ll = app.add_subcommand("build-ll", "Build a budgeted landmark index");
  add_common(build_ll, o.common, true);
  auto* query_ll_cmd = app.add_subcommand("query-ll", "Answer pair queries from a landmark index");
  add_common(query_ll_cmd, o.common, false);
  auto* eval = app.add_subcommand("eval", "Distortion of an index against exact distances");
  add_common(eval, o.common, true);
  for (auto* cmd : {build_ll, eval}) {
    cmd->add_option("--budget", o.budget, "Index bytes per vertex");
    cmd->add_option("--k", o.k, "Cluster capacity")->check(CLI::PositiveNumber);
    cmd->add_option("--d", o.d, "Cluster diameter bound");
    cmd->add_option("--hops", o.hops, "Candidate search through selected vertices")
        ->check(CLI::IsMember({"through", "unmarked"}));
  }
  query_ll_cmd->add_option("--index", o.index, "Landmark index file")->required();
  query_ll_cmd->add_option("--pairs", o.pairs_file, "Pair file, one \"u v\" per line (default: stdin)");
  query_ll_cmd->add_flag("--star", o.star, "Use the star-cluster scan shortcut");
  for (auto* cmd : {query_ll_cmd, eval}) cmd->add_option("--tau", o.tau, "Bidirectional search size per side");
  eval->add_option("--index", o.index, "Landmark or 2-hop index (default: build from --budget)");
  eval->add_option("--pairs", o.pair_count, "Pairs to sample");

  auto* build_pll_cmd = app.add_subcommand("build-pll", "Build an exact 2-hop index");
  add_common(build_pll_cmd, o.common, true);
  build_pll_cmd->add_option("--r", o.r, "Clusters in the first phase");
  build_pll_cmd->add_option("--k", o.k, "Cluster capacity")->check(CLI::PositiveNumber);
  build_pll_cmd->add_option("--d", o.d, "Cluster diameter bound");
  build_pll_cmd->add_option("--hops", o.hops, "Candidate search through selected vertices")
      ->check(CLI::IsMember({"through", "unmarked"}));
  build_pll_cmd->add_flag("--sequential", o.sequential, "One source per batch");

  auto* query_pll_cmd = app.add_subcommand("query-pll", "Answer pair queries from a 2-hop index");
  add_common(query_pll_cmd, o.common, false);
  query_pll_cmd->add_option("--index", o.index, "2-hop index file")->required();
  query_pll_cmd->add_option("--pairs", o.pairs_file, "Pair file, one \"u v\" per line (default: stdin)");

  auto* bench = app.add_subcommand("bench", "Time plain BFS against cluster-BFS");
  add_common(bench, o.common, true);
  bench->add_option("--k", o.k, "Cluster capacity")->check(CLI::PositiveNumber);
  bench->add_option("--d", o.d, "Cluster diameter bound");
  bench->add_option("--threads-list", o.thread_list, "Thread counts for the parallel runs")->delimiter(',');
  bench->add_option("--reps", o.reps, "Clusters to time")->check(CLI::PositiveNumber);
  bench->add_option("--name", o.name, "Graph label in the report");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  parallel::ScopedWorkers workers(o.common.threads > 0 ? o.common.threads : parallel::max_workers());
  try {
    if (*convert) return cmd_convert(o, out);
    if (*cbfs) return cmd_cbfs(o, out);
    if (*build_ll) return cmd_build_ll(o, out, err);
    if (*query_ll_cmd) return cmd_query_ll(o, in, out);
    if (*eval) return cmd_eval(o, out, err);
    if (*build_pll_cmd) return cmd_build_pll(o, out, err);
    if (*query_pll_cmd) return cmd_query_pll(o, in, out);
    if (*bench) return cmd_bench(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace cbfs
