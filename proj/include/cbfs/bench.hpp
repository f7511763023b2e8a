#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cbfs/cluster_bfs.hpp"
#include "cbfs/graph.hpp"

namespace cbfs {

// Wall-clock seconds taken by f().
template <class F>
double time_seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double median(std::vector<double> xs);

struct BenchConfig {
  std::string graph_name = "graph";
  std::size_t k = 64;
  std::uint32_t d = 2;
  std::vector<int> threads{1};
  std::size_t reps = 10;  // clusters timed; medians are taken over them
};

struct BenchRecord {
  std::string graph;
  std::size_t n = 0;
  std::size_t m = 0;  // undirected edges for symmetric graphs, arcs otherwise
  std::size_t k = 0;
  std::uint32_t d = 0;
  int threads = 1;
  std::size_t clusters = 0;
  double plain_seq_s = 0;  // k single-threaded plain BFS runs, one per source
  double cbfs_seq_s = 0;   // single-threaded cluster-BFS
  double cbfs_par_s = 0;   // cluster-BFS at `threads`
  double speedup_vs_plain() const { return cbfs_seq_s > 0 ? plain_seq_s / cbfs_seq_s : 0; }
  double self_speedup() const { return cbfs_par_s > 0 ? cbfs_seq_s / cbfs_par_s : 0; }
};

struct BenchReport {
  std::vector<BenchRecord> records;
  std::vector<RoundInfo> rounds;  // first cluster's parallel run at the largest thread count
  std::vector<std::string> warnings;
};

// Times plain BFS from each source, sequential cluster-BFS and parallel
// cluster-BFS for each thread count, over clusters from select_clusters.
BenchReport run_bench(const Graph& g, const BenchConfig& cfg);

void write_bench_text(std::ostream& out, const BenchReport& report);
void write_bench_csv(std::ostream& out, const BenchReport& report);

}  // namespace cbfs
