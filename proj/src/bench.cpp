#include "cbfs/bench.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include "cbfs/bfs.hpp"
#include "cbfs/cluster_select.hpp"
#include "cbfs/parallel.hpp"

namespace cbfs {

double median(std::vector<double> xs) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2;
}

BenchReport run_bench(const Graph& g, const BenchConfig& cfg) {
  if (cfg.threads.empty()) throw UsageError("bench needs at least one thread count");
  if (cfg.reps == 0) throw UsageError("bench needs at least one repetition");
  BenchReport report;
  auto sel = select_clusters(g, SelectionConfig{cfg.reps, cfg.k, cfg.d});
  report.warnings = std::move(sel.warnings);
  const auto& clusters = sel.clusters;

  std::vector<double> plain, seq;
  {
    parallel::ScopedWorkers one(1);
    for (const auto& c : clusters) {
      plain.push_back(time_seconds([&] {
        for (VertexId s : c.sources) (void)plain_bfs(g, s);
      }));
      seq.push_back(time_seconds([&] { (void)cluster_bfs(g, c); }));
    }
  }

  const int top = *std::max_element(cfg.threads.begin(), cfg.threads.end());
  for (int t : cfg.threads) {
    parallel::ScopedWorkers workers(t);
    std::vector<double> par;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      ClusterBfsOptions opts;
      const bool log = i == 0 && t == top && report.rounds.empty();
      if (log) opts.on_round = [&](const RoundInfo& info) { report.rounds.push_back(info); };
      par.push_back(time_seconds([&] { (void)cluster_bfs(g, clusters[i], opts); }));
    }
    BenchRecord rec;
    rec.graph = cfg.graph_name;
    rec.n = g.num_vertices();
    rec.m = g.symmetric() ? g.num_arcs() / 2 : g.num_arcs();
    rec.k = cfg.k;
    rec.d = cfg.d;
    rec.threads = t;
    rec.clusters = clusters.size();
    rec.plain_seq_s = median(plain);
    rec.cbfs_seq_s = median(seq);
    rec.cbfs_par_s = median(par);
    report.records.push_back(rec);
  }
  return report;
}

void write_bench_text(std::ostream& out, const BenchReport& report) {
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
  out << std::left << std::setw(16) << "graph" << std::right << std::setw(10) << "n" << std::setw(12) << "m"
      << std::setw(5) << "k" << std::setw(3) << "d" << std::setw(8) << "threads" << std::setw(12) << "plain_s"
      << std::setw(12) << "cbfs_seq_s" << std::setw(12) << "cbfs_par_s" << std::setw(10) << "vs_plain"
      << std::setw(10) << "self" << '\n';
  for (const auto& r : report.records) {
    out << std::left << std::setw(16) << r.graph << std::right << std::setw(10) << r.n << std::setw(12) << r.m
        << std::setw(5) << r.k << std::setw(3) << r.d << std::setw(8) << r.threads << std::fixed
        << std::setprecision(6) << std::setw(12) << r.plain_seq_s << std::setw(12) << r.cbfs_seq_s << std::setw(12)
        << r.cbfs_par_s << std::setprecision(2) << std::setw(10) << r.speedup_vs_plain() << std::setw(10)
        << r.self_speedup() << '\n';
    out.unsetf(std::ios::floatfield);
  }
  if (!report.rounds.empty()) {
    out << "rounds:";
    for (const auto& info : report.rounds)
      out << ' ' << info.round << ':' << info.frontier_size << (info.mode == EdgeMapMode::kDense ? 'D' : 'S');
    out << '\n';
  }
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "graph,n,m,k,d,threads,clusters,plain_seq_s,cbfs_seq_s,cbfs_par_s,speedup_vs_plain,self_speedup\n";
  for (const auto& r : report.records) {
    out << r.graph << ',' << r.n << ',' << r.m << ',' << r.k << ',' << r.d << ',' << r.threads << ',' << r.clusters
        << ',' << std::setprecision(9) << r.plain_seq_s << ',' << r.cbfs_seq_s << ',' << r.cbfs_par_s << ','
        << r.speedup_vs_plain() << ',' << r.self_speedup() << '\n';
  }
  out << std::setprecision(6);
}

}  // namespace cbfs
