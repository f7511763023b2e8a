#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cbfs/byte_io.hpp"
#include "cbfs/generators.hpp"
#include "cbfs/graph.hpp"
#include "support/reference.hpp"

using namespace cbfs;

namespace {

std::vector<VertexId> nbrs(const Graph& g, VertexId v) {
  auto s = g.out_neighbors(v);
  return {s.begin(), s.end()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cbfs_test_graph_" + name);
}

}  // namespace

TEST_CASE("from_arcs drops self-loops and duplicates and symmetrizes") {
  const Graph g = Graph::from_arcs(4, {{0, 1}, {1, 0}, {0, 1}, {2, 2}, {3, 1}}, true);
  CHECK(g.symmetric());
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_arcs() == 4);
  CHECK(nbrs(g, 0) == std::vector<VertexId>{1});
  CHECK(nbrs(g, 1) == std::vector<VertexId>{0, 3});
  CHECK(nbrs(g, 2).empty());
  CHECK(validate(g));
}

TEST_CASE("directed graphs keep a reversed CSR") {
  const Graph g = Graph::from_arcs(3, {{0, 1}, {0, 2}, {2, 1}}, false);
  CHECK_FALSE(g.symmetric());
  CHECK(g.out_degree(0) == 2);
  CHECK(g.in_degree(0) == 0);
  auto in1 = g.in_neighbors(1);
  CHECK(std::vector<VertexId>(in1.begin(), in1.end()) == std::vector<VertexId>{0, 2});
  CHECK(validate(g));
}

TEST_CASE("from_arcs rejects out-of-range endpoints") {
  CHECK_THROWS_AS(Graph::from_arcs(2, {{0, 2}}, true), UsageError);
}

TEST_CASE("validate reports broken CSR") {
  SUBCASE("self-loop") {
    auto g = Graph::from_csr({0, 1, 2}, {0, 0}, {}, {}, true);
    CHECK_FALSE(validate(g));
  }
  SUBCASE("missing reverse arc") {
    auto g = Graph::from_csr({0, 1, 1}, {1}, {}, {}, true);
    const auto report = validate(g);
    CHECK_FALSE(report.ok);
    CHECK(report.violation.find("asymmetric") != std::string::npos);
  }
  SUBCASE("unsorted neighbors") {
    auto g = Graph::from_csr({0, 2, 3, 4}, {2, 1, 0, 0}, {}, {}, true);
    CHECK_FALSE(validate(g));
  }
  SUBCASE("target out of range") {
    auto g = Graph::from_csr({0, 1}, {5}, {}, {}, true);
    CHECK_FALSE(validate(g));
  }
}

TEST_CASE("order_by_degree sorts by degree, ties by id") {
  const Graph g = gen::star(5);
  const auto order = order_by_degree(g);
  CHECK(order == std::vector<VertexId>{0, 1, 2, 3, 4});
  const Graph h = Graph::from_arcs(4, {{3, 1}, {3, 2}, {1, 2}, {0, 3}}, true);
  CHECK(order_by_degree(h) == std::vector<VertexId>{3, 1, 2, 0});
}

TEST_CASE("edge list parsing remaps ids by first appearance") {
  std::istringstream in("# comment\n\n10 20\n20 30\n  \n10 30\n");
  const Graph g = parse_edge_list(in, true);
  CHECK(g.num_vertices() == 3);
  CHECK(nbrs(g, 0) == std::vector<VertexId>{1, 2});
  CHECK(nbrs(g, 1) == std::vector<VertexId>{2});
}

TEST_CASE("edge list errors name the line") {
  std::istringstream bad("0 1\n1 x\n");
  try {
    (void)parse_edge_list(bad, false);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream trailing("0 1 2\n");
  CHECK_THROWS_AS(parse_edge_list(trailing, false), DataError);
  std::istringstream negative("-1 2\n");
  CHECK_THROWS_AS(parse_edge_list(negative, false), DataError);
}

TEST_CASE("edge list writer round-trips, isolated vertices included") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Graph g = trial % 2 ? ref::random_digraph(30, 60, rng) : ref::coin_graph(30, 0.08, rng);
    std::stringstream buf;
    write_edge_list(g, buf);
    const Graph back = parse_edge_list(buf, !g.symmetric());
    CHECK(back == g);
  }
}

TEST_CASE("binary cache round-trips and rejects corruption") {
  std::mt19937_64 rng(11);
  const Graph g = ref::random_digraph(40, 120, rng);
  const auto bytes = encode_graph(g);
  CHECK(decode_graph(bytes) == g);

  auto truncated = bytes;
  truncated.resize(truncated.size() - 3);
  CHECK_THROWS_AS(decode_graph(truncated), DataError);

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(decode_graph(bad_magic), DataError);

  auto extra = bytes;
  extra.push_back(0);
  CHECK_THROWS_AS(decode_graph(extra), DataError);

  // Point an arc outside the vertex range: validation must catch it.
  auto bad_target = bytes;
  bad_target[bad_target.size() - 1] = 0xFF;
  CHECK_THROWS_AS(decode_graph(bad_target), DataError);
}

TEST_CASE("load_graph sniffs the format") {
  const Graph g = gen::cycle(6);
  const auto cache = temp_path("cycle.bin");
  const auto text = temp_path("cycle.txt");
  save_graph_cache(g, cache);
  {
    std::ofstream out(text);
    write_edge_list(g, out);
  }
  CHECK(load_graph(cache, false) == g);
  CHECK(load_graph(text, false) == g);
  CHECK_THROWS_AS(load_graph(temp_path("missing.txt"), false), DataError);
  std::filesystem::remove(cache);
  std::filesystem::remove(text);
}

TEST_CASE("generators produce the advertised shapes") {
  CHECK(gen::path(5).num_arcs() == 8);
  CHECK(gen::cycle(5).num_arcs() == 10);
  CHECK(gen::star(6).out_degree(0) == 5);
  CHECK(gen::grid(3, 4).num_arcs() == 2 * (3 * 3 + 2 * 4));
  const Graph u = gen::disjoint_union(gen::path(3), gen::path(2));
  CHECK(u.num_vertices() == 5);
  CHECK(nbrs(u, 3) == std::vector<VertexId>{4});

  const Graph er = gen::erdos_renyi(2000, 8.0, 3);
  const double avg = static_cast<double>(er.num_arcs()) / 2000.0;
  CHECK(avg > 7.0);
  CHECK(avg < 9.0);
  CHECK(validate(er));

  const Graph pa = gen::preferential_attachment(1000, 3, 5);
  CHECK(validate(pa));
  CHECK(pa.num_arcs() == 2 * (6 + 3 * (1000 - 4)));
  CHECK(gen::erdos_renyi(500, 6.0, 9) == gen::erdos_renyi(500, 6.0, 9));
}
