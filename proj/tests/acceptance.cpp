// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>

#include "cbfs/bench.hpp"
#include "cbfs/bfs.hpp"
#include "cbfs/cluster_bfs.hpp"
#include "cbfs/cluster_select.hpp"
#include "cbfs/distortion.hpp"
#include "cbfs/edge_map.hpp"
#include "cbfs/generators.hpp"
#include "cbfs/landmark.hpp"
#include "cbfs/parallel.hpp"
#include "cbfs/pll.hpp"
#include "support/reference.hpp"

using namespace cbfs;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& title, const std::string& detail) {
  std::printf("%s  %2d  %-32s %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... xs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

// n spread log-uniformly over [lo, hi].
std::size_t log_uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  std::uniform_real_distribution<double> u(std::log(static_cast<double>(lo)), std::log(static_cast<double>(hi)));
  return static_cast<std::size_t>(std::exp(u(rng)));
}

Graph random_graph(std::mt19937_64& rng, std::size_t n, int trial) {
  if (trial % 2 == 0) {
    std::uniform_real_distribution<double> avg(4.0, 16.0);
    return gen::erdos_renyi(n, std::min(avg(rng), static_cast<double>(n - 1)), rng());
  }
  const std::size_t m = 1 + rng() % 8;
  return gen::preferential_attachment(std::max(n, m + 2), m, rng());
}

// ---------------------------------------------------------------- 1, 2

void exactness_and_frontier_cap() {
  std::mt19937_64 rng(1001);
  std::size_t graphs = 0, runs = 0, checked = 0, mismatches = 0, cap_violations = 0, max_n = 0;
  const std::uint32_t ds[] = {0, 1, 2, 3, 4, 6};
  const std::size_t ks[] = {1, 7, 64, 130};
  for (int trial = 0; trial < 104; ++trial) {
    const std::size_t n = trial == 0 ? 10 : trial == 1 ? 5000 : log_uniform(rng, 10, 5000);
    const Graph g = random_graph(rng, n, trial);
    max_n = std::max(max_n, g.num_vertices());
    ++graphs;
    // Sources repeat across (d, k); cache their BFS rows.
    std::vector<std::vector<Distance>> rows(g.num_vertices());
    for (std::uint32_t d : ds)
      for (std::size_t k : ks) {
        const auto sel = select_clusters(g, SelectionConfig{1, k, d});
        for (const Cluster& c : sel.clusters) {
          ClusterBfsOptions opts;
          opts.count_frontier_appearances = true;
          ClusterBfsStats stats;
          const auto dist = cluster_bfs(g, c, opts, &stats);
          ++runs;
          for (std::size_t j = 0; j < c.size(); ++j) {
            auto& row = rows[c.sources[j]];
            if (row.empty()) row = ref::bfs(g, c.sources[j]);
            for (VertexId v = 0; v < g.num_vertices(); ++v) {
              ++checked;
              mismatches += dist.decode(v, j) != row[v];
            }
          }
          for (auto a : stats.frontier_appearances) cap_violations += a > c.d + 1;
        }
      }
  }
  report(1, mismatches == 0, "C-BFS exactness",
         fmt("%zu graphs (n 10..%zu), %zu runs, %zu distances, %zu mismatches", graphs, max_n, runs, checked,
             mismatches));
  report(2, cap_violations == 0, "frontier cap d+1", fmt("%zu runs, %zu vertices over the cap", runs, cap_violations));
}

// ---------------------------------------------------------------- 3

void determinism() {
  std::mt19937_64 rng(1003);
  const int hw = std::max(1, parallel::hardware_workers());
  std::set<int> counts{1, 2, hw, 4};
  std::size_t differing = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(rng, log_uniform(rng, 500, 20000), trial);
    const auto c = select_clusters(g, SelectionConfig{1, trial % 3 ? 64u : 130u, 2u + static_cast<std::uint32_t>(trial % 3)}).clusters.front();
    ClusterDistances base;
    for (int t : counts) {
      parallel::ScopedWorkers w(t);
      auto dist = cluster_bfs(g, c);
      if (t == 1)
        base = std::move(dist);
      else
        differing += !(dist == base);
    }
  }
  std::string ts;
  for (int t : counts) ts += (ts.empty() ? "" : ",") + std::to_string(t);
  report(3, differing == 0, "determinism across threads",
         fmt("20 instances, threads {%s} (max=%d), %zu differing outputs", ts.c_str(), hw, differing));
}

// ---------------------------------------------------------------- 4

struct Visit {
  std::vector<std::uint8_t>& seen;
  bool cond(VertexId v) const { return std::atomic_ref<std::uint8_t>(seen[v]).load() == 0; }
  bool update(VertexId, VertexId v) {
    if (seen[v]) return false;
    seen[v] = 1;
    return true;
  }
  bool update_atomic(VertexId, VertexId v) {
    std::uint8_t expected = 0;
    return std::atomic_ref<std::uint8_t>(seen[v]).compare_exchange_strong(expected, 1);
  }
};

void sparse_dense() {
  std::mt19937_64 rng(1004);
  std::size_t differing = 0, nonempty = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = trial % 2 ? ref::random_digraph(2000, 12000, rng) : random_graph(rng, 2000, trial / 2);
    std::bernoulli_distribution in_frontier(0.01 + 0.3 * (trial % 5) / 4.0), pre_seen(0.3);
    std::vector<VertexId> members;
    std::vector<std::uint8_t> seen0(g.num_vertices(), 0);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (in_frontier(rng)) members.push_back(v);
      if (pre_seen(rng)) seen0[v] = 1;
    }
    for (VertexId v : members) seen0[v] = 1;
    const Frontier f(g.num_vertices(), members);
    std::vector<std::vector<VertexId>> out;
    for (auto mode : {EdgeMapMode::kSparse, EdgeMapMode::kDense}) {
      auto seen = seen0;
      Visit fn{seen};
      const Frontier next = edge_map(g, f, fn, EdgeMapOptions{mode, 20});
      std::vector<VertexId> v(next.vertices().begin(), next.vertices().end());
      std::sort(v.begin(), v.end());
      out.push_back(std::move(v));
    }
    differing += out[0] != out[1];
    nonempty += !out[0].empty();
  }
  report(4, differing == 0, "sparse/dense EdgeMap equivalence",
         fmt("50 frontiers (%zu with nonempty output), %zu differing", nonempty, differing));
}

// ---------------------------------------------------------------- 5

void budget() {
  struct Case {
    std::size_t budget, k;
    std::uint32_t d;
    std::size_t want;
  };
  const Case cases[] = {{1024, 64, 2, 60}, {1024, 8, 2, 341}, {1024, 64, 3, 40}, {1024, 64, 4, 31}};
  bool ok = true;
  std::string got;
  for (const auto& c : cases) {
    const std::size_t r = budget_to_cluster_count(c.budget, c.k, c.d);
    ok = ok && r == c.want;
    got += fmt("(%zu,%zu,%u)->%zu ", c.budget, c.k, c.d, r);
  }
  report(5, ok, "budget accounting", got);
}

// ---------------------------------------------------------------- 6, 7, 8

void one_sided() {
  std::mt19937_64 rng(1006);
  std::size_t pairs = 0, below = 0, tight_cases = 0, not_tight = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(rng, 100 + rng() % 401, trial);
    const auto clusters = select_clusters(g, SelectionConfig{1 + rng() % 6, 16, 1 + static_cast<std::uint32_t>(trial % 4)}).clusters;
    const auto idx = build_ll_index(g, clusters);
    const auto all = ref::all_pairs(g);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(g.num_vertices() - 1));
    for (int i = 0; i < 10000; ++i) {
      const VertexId u = pick(rng), v = pick(rng);
      const Distance truth = all[u][v];
      const Distance ll = query_ll(idx, u, v).estimate;
      const Distance combined = query_combined(idx, g, u, v, 8).estimate;
      ++pairs;
      below += ll < truth || combined < truth;
      bool on_path = false;
      for (const auto& c : clusters)
        for (VertexId s : c.sources) on_path = on_path || (truth != kUnreachable && ref::add(all[u][s], all[s][v]) == truth);
      if (on_path) {
        ++tight_cases;
        not_tight += ll != truth || combined != truth;
      }
    }
  }
  report(6, below == 0 && not_tight == 0, "one-sided error",
         fmt("20 graphs x 10000 pairs, %zu underestimates; %zu pairs with a source on a shortest path, %zu inexact",
             below, tight_cases, not_tight));
}

void tightness() {
  std::mt19937_64 rng(1007);
  std::size_t checks = 0, wrong = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(rng, 20 + rng() % 281, trial);
    const auto clusters = select_clusters(g, SelectionConfig{3, 1 + rng() % 70, static_cast<std::uint32_t>(trial % 5)}).clusters;
    const auto idx = build_ll_index(g, clusters);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const auto dist = cluster_bfs(g, clusters[c]);
      for (VertexId u = 0; u < g.num_vertices(); ++u)
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
          Distance brute = kUnreachable;
          for (std::size_t j = 0; j < clusters[c].size(); ++j) brute = std::min(brute, ref::add(dist.decode(u, j), dist.decode(v, j)));
          ++checks;
          wrong += per_cluster_estimate(idx, c, u, v) != brute;
        }
    }
  }
  report(7, wrong == 0, "per-cluster query tightness", fmt("%zu (cluster, u, v) checks, %zu wrong", checks, wrong));
}

void refinement() {
  std::mt19937_64 rng(1008);
  std::size_t worse = 0, inexact = 0, samples = 0;
  double worst_gap = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = random_graph(rng, log_uniform(rng, 300, 20000), trial);
    const auto idx = build_ll_index(g, select_clusters(g, SelectionConfig{2 + rng() % 10, 64, 2}).clusters);
    const auto alone = eval_distortion(idx, g, 2000, trial, 0);
    const auto both = eval_distortion(idx, g, 2000, trial, 512);
    const double ea = alone.epsilon_percent.value_or(INFINITY), eb = both.epsilon_percent.value_or(INFINITY);
    ++samples;
    worse += eb > ea;
    if (std::isfinite(ea) && std::isfinite(eb)) worst_gap = std::max(worst_gap, eb - ea);
    const auto exact = eval_distortion(idx, g, 300, trial + 100, g.num_vertices());
    inexact += exact.exact_hits != exact.pairs;
  }
  report(8, worse == 0 && inexact == 0, "bidirectional refinement",
         fmt("%zu samples, eps(tau=512) > eps(index) in %zu; tau=n inexact in %zu", samples, worse, inexact));
}

// ---------------------------------------------------------------- 9, 10

void pll() {
  std::mt19937_64 rng(1009);
  std::size_t graphs = 0, disconnected = 0, queries = 0, wrong = 0;
  for (int trial = 0; trial < 51; ++trial) {
    const std::size_t n = log_uniform(rng, 10, 2000);
    Graph g = random_graph(rng, n, trial);
    if (trial % 3 == 2) g = gen::disjoint_union(g, gen::erdos_renyi(std::max<std::size_t>(n / 4, 2), 1.2, rng()));
    ++graphs;
    const auto all = ref::all_pairs(g);
    bool split = false;
    for (Distance x : all[0]) split = split || x == kUnreachable;
    disconnected += split;
    for (std::size_t r : {0u, 1u, 4u}) {
      const auto labels = build_pll(g, PllConfig{r, 64, 2});
      for (VertexId u = 0; u < g.num_vertices(); ++u)
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
          ++queries;
          wrong += query_pll(labels, u, v) != all[u][v];
        }
    }
  }
  report(9, wrong == 0, "PLL exactness",
         fmt("%zu graphs (%zu disconnected), r in {0,1,4}, %zu queries, %zu wrong", graphs, disconnected, queries, wrong));
}

// Batching cost depends on how large the first batches are next to n, so
// the suite uses the largest graphs a desk run affords, with r = 64 clusters.
void inflation() {
  struct Case {
    std::size_t n, m;
  };
  const Case cases[] = {{20000, 4}, {30000, 3}, {50000, 4}};
  std::size_t batched_total = 0, seq_total = 0;
  std::string per_graph;
  for (const auto& c : cases) {
    const Graph g = gen::preferential_attachment(c.n, c.m, 1010 + c.n);
    PllConfig cfg{64, 64, 2};
    const auto batched = build_pll(g, cfg).total_hubs();
    cfg.sequential = true;
    const auto seq = build_pll(g, cfg).total_hubs();
    batched_total += batched;
    seq_total += seq;
    per_graph += fmt(" %zuk:%.3f", c.n / 1000, static_cast<double>(batched) / static_cast<double>(seq));
  }
  const double ratio = static_cast<double>(batched_total) / static_cast<double>(seq_total);
  report(10, ratio <= 1.25, "batched-PLL inflation",
         fmt("PA r=64: labels batched/sequential = %.3f over the suite (per graph%s), alarm at 1.25", ratio,
             per_graph.c_str()));
}

// ---------------------------------------------------------------- 11, 12

struct Timing {
  double plain = 0, cbfs_1 = 0, cbfs_max = 0, queue = 0;
};

Timing time_big_graph(const Graph& g, const Cluster& c, int max_threads) {
  Timing t;
  std::vector<double> plain, one, many, queue;
  for (int rep = 0; rep < 3; ++rep) {
    parallel::ScopedWorkers w1(1);
    plain.push_back(time_seconds([&] {
      for (VertexId s : c.sources) (void)plain_bfs(g, s);
    }));
    queue.push_back(time_seconds([&] {
      for (VertexId s : c.sources) (void)ref::bfs(g, s);
    }));
    one.push_back(time_seconds([&] { (void)cluster_bfs(g, c); }));
    parallel::ScopedWorkers wm(max_threads);
    many.push_back(time_seconds([&] { (void)cluster_bfs(g, c); }));
  }
  t.plain = median(plain);
  t.cbfs_1 = median(one);
  t.cbfs_max = median(many);
  t.queue = median(queue);
  return t;
}

std::size_t physical_cores() {
  std::ifstream in("/proc/cpuinfo");
  std::set<std::pair<std::string, std::string>> cores;
  std::string line, phys = "0";
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, line.find_last_not_of(" \t", colon - 1) + 1);
    std::string value = colon + 2 <= line.size() ? line.substr(colon + 2) : "";
    if (key == "physical id") phys = value;
    if (key == "core id") cores.emplace(phys, value);
  }
  if (!cores.empty()) return cores.size();
  return std::max(1u, std::thread::hardware_concurrency());
}

void speedups() {
  const Graph g = gen::preferential_attachment(201000, 5, 1011);
  const std::size_t edges = g.num_arcs() / 2;
  const Cluster c = select_clusters(g, SelectionConfig{1, 64, 2}).clusters.front();
  const int hw = std::max(1, parallel::hardware_workers());
  const Timing t = time_big_graph(g, c, hw);
  const double bitpar = t.plain / t.cbfs_1;
  report(11, edges >= 1000000 && c.size() == 64 && bitpar >= 5.0, "bit-parallel speedup >= 5x",
         fmt("PA n=201000 edges=%zu, k=%zu d=2: 64 plain BFS %.3fs, C-BFS %.3fs, %.1fx (queue BFS %.3fs, %.1fx)", edges,
             c.size(), t.plain, t.cbfs_1, bitpar, t.queue, t.queue / t.cbfs_1));

  const std::size_t cores = physical_cores();
  const double self = t.cbfs_1 / t.cbfs_max;
  if (cores >= 4)
    report(12, self >= 2.0, "self-speedup >= 2x",
           fmt("%zu physical cores, %d threads: %.3fs vs %.3fs, %.2fx", cores, hw, t.cbfs_1, t.cbfs_max, self));
  else
    report(12, true, "self-speedup >= 2x",
           fmt("vacuous: %zu physical core(s), criterion needs >= 4 (measured %.2fx at %d threads)", cores, self, hw));
}

// ---------------------------------------------------------------- 13

void round_trips() {
  std::mt19937_64 rng(1013);
  const auto dir = std::filesystem::temp_directory_path();
  std::size_t instances = 0, mismatched = 0, queries = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = random_graph(rng, log_uniform(rng, 50, 3000), trial);
    if (trial % 3 == 0) g = gen::disjoint_union(g, gen::path(400));
    const auto ll = build_ll_index(g, select_clusters(g, SelectionConfig{1 + rng() % 8, 1 + rng() % 100, static_cast<std::uint32_t>(rng() % 4)}).clusters);
    const auto labels = build_pll(g, PllConfig{rng() % 5, 64, 2});
    const auto ll_path = dir / ("cbfs_accept_ll_" + std::to_string(trial));
    const auto pll_path = dir / ("cbfs_accept_pll_" + std::to_string(trial));
    ll.save(ll_path);
    labels.save(pll_path);
    const auto ll_back = LandmarkIndex::load(ll_path);
    const auto pll_back = TwoHopLabels::load(pll_path);
    std::filesystem::remove(ll_path);
    std::filesystem::remove(pll_path);
    ++instances;
    bool same = ll_back == ll && pll_back == labels;
    for (VertexId u = 0; u < g.num_vertices(); u += 1 + g.num_vertices() / 150)
      for (VertexId v = 0; v < g.num_vertices(); ++v) {
        queries += 2;
        const auto a = query_ll(ll, u, v), b = query_ll(ll_back, u, v);
        same = same && a.estimate == b.estimate && a.witness.cluster == b.witness.cluster &&
               a.witness.source_index == b.witness.source_index && query_pll(labels, u, v) == query_pll(pll_back, u, v);
      }
    mismatched += !same;
  }
  report(13, mismatched == 0, "serialization round-trips",
         fmt("%zu instances, %zu queries, %zu mismatched", instances, queries, mismatched));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void()>>> steps{
      {"1-2", exactness_and_frontier_cap}, {"3", determinism}, {"4", sparse_dense}, {"5", budget},
      {"6", one_sided}, {"7", tightness}, {"8", refinement}, {"9", pll}, {"10", inflation}, {"11-12", speedups},
      {"13", round_trips}};
  for (const auto& [name, step] : steps) {
    const double s = time_seconds(step);
    std::fprintf(stderr, "  [criterion %s: %.1fs]\n", name, s);
  }
  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
