#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "kcgen/encode.hpp"
#include "kcgen/graph.hpp"

using namespace kcgen;

namespace {

Graph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
  Graph g;
  for (int v = 0; v < n; ++v) g.add_vertex(plain_label(v));
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

// Oracle from the defining condition: u ~ v iff N(u)\{v} = N(v)\{u}.
bool same_type_oracle(const Graph& g, int u, int v) {
  auto nu = g.neighbors(u);
  auto nv = g.neighbors(v);
  nu.erase(std::remove(nu.begin(), nu.end(), v), nu.end());
  nv.erase(std::remove(nv.begin(), nv.end(), u), nv.end());
  return nu == nv;
}

std::size_t diversity_oracle(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (same_type_oracle(g, u, v)) {
        int a = root[u], b = root[v];
        for (int t = 0; t < n; ++t)
          if (root[t] == a) root[t] = b;
      }
  std::vector<int> distinct = root;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  return distinct.size();
}

// Brute-force isomorphism for graphs with at most 8 vertices.
bool isomorphic(const Graph& a, const Graph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges())
    return false;
  const int n = a.num_vertices();
  REQUIRE(n <= 8);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v)
        if (a.has_edge(u, v) != b.has_edge(perm[u], perm[v])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("incidence graph shapes") {
  CnfFormula f;
  f.vars = VariableTable::plain(2);
  f.clauses.push_back({1, -2});
  Graph g = incidence_graph(f);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 2);
  CHECK(g.neighbors(2) == std::vector<int>{0, 1});

  CnfFormula empty;
  empty.vars = VariableTable::plain(3);
  Graph ge = incidence_graph(empty);
  CHECK(ge.num_vertices() == 3);
  CHECK(ge.num_edges() == 0);

  F2Matrix a = sample_parity_check(2, 4, 1);
  CnfFormula blocked = encode_blocked_pathwidth(a, {1, 2, 0, 1});
  Graph gb = incidence_graph(blocked);
  CHECK(gb.num_vertices() == blocked.vars.size() + static_cast<int>(blocked.clauses.size()));
}

TEST_CASE("neighborhood partition on small graphs") {
  CHECK(neighborhood_partition(from_edges(2, {{0, 1}})).diversity() == 1);
  CHECK(neighborhood_partition(from_edges(3, {{0, 1}, {1, 2}, {0, 2}})).diversity() == 1);
  Graph p4 = from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(diversity_oracle(p4) == 4);
  CHECK(neighborhood_partition(p4).diversity() == 4);
}

TEST_CASE("neighborhood partition matches the pairwise oracle") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    F2Matrix a = sample_parity_check(2, 3, seed);
    Graph g = incidence_graph(encode_naive(a));
    CHECK(neighborhood_partition(g).diversity() == diversity_oracle(g));
  }
}

TEST_CASE("duplicating a vertex with its neighborhood keeps the class count") {
  Graph g = from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  auto before = neighborhood_partition(g).diversity();
  int dup = g.add_vertex(plain_label(99));
  std::vector<int> nbrs = g.neighbors(1);
  for (int u : nbrs) g.add_edge(dup, u);
  CHECK(neighborhood_partition(g).diversity() == before);
}

TEST_CASE("modular contraction of complete bipartite graphs") {
  Graph k23 = from_edges(5, {{0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}});
  Contraction con = modular_contraction(k23);
  CHECK(con.graph.num_vertices() == 2);
  CHECK(con.graph.num_edges() == 1);
  CHECK(isomorphic(con.graph, from_edges(2, {{0, 1}})));
}

TEST_CASE("modular contraction is identity on type-distinct graphs") {
  Graph p4 = from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  Contraction con = modular_contraction(p4);
  CHECK(con.graph.num_vertices() == 4);
  CHECK(isomorphic(con.graph, p4));
}

TEST_CASE("modular contraction is idempotent") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    F2Matrix a = sample_parity_check(2, 3, seed);
    Graph g = incidence_graph(encode_blocked_pathwidth(a, {2, 1, 0, seed}));
    Contraction once = modular_contraction(g);
    Contraction twice = modular_contraction(once.graph);
    CHECK(twice.graph == once.graph);
  }
}

TEST_CASE("contracted blocked instance has the expected vertex set") {
  // k >= 2: n(2k+1) vertices, one x, s, r vertex per (block, column)
  for (int n : {3, 4}) {
    F2Matrix a = sample_parity_check(4, n, 7);
    Graph g = incidence_graph(encode_blocked_pathwidth(a, {2, 2, 0, 7}));
    Contraction con = modular_contraction(g);
    CHECK(con.graph.num_vertices() == n * (2 * 2 + 1));
  }
  // k = 1: x_n and the last accumulator class share a neighborhood type
  F2Matrix a1 = sample_parity_check(2, 4, 7);
  Graph g1 = incidence_graph(encode_blocked_pathwidth(a1, {1, 2, 0, 7}));
  CHECK(modular_contraction(g1).graph.num_vertices() == 3 * 4 - 1);
}

TEST_CASE("blocked decomposition bags") {
  PathDecomposition d = build_blocked_decomposition(1, 2);
  REQUIRE(d.bags.size() == 5);
  for (const auto& bag : d.bags) CHECK(bag.size() == 2);
  CHECK(d.width() == 1);

  for (int k : {1, 2, 3})
    for (int n : {2, 4, 5}) {
      PathDecomposition dk = build_blocked_decomposition(k, n);
      CHECK(dk.bags.size() == static_cast<std::size_t>(3 * n - 1));
      CHECK(dk.width() == 2 * k - 1);
    }
}

TEST_CASE("blocked decomposition validates on the contracted graph") {
  F2Matrix a = sample_parity_check(4, 3, 5);
  CnfFormula f = encode_blocked_pathwidth(a, {2, 2, 0, 5});
  BlockedWidthCheck check = check_blocked_width(f);
  CHECK(check.valid);
  CHECK(check.width == 3);
}

TEST_CASE("decomposition validator reports violations") {
  Graph g = from_edges(3, {{0, 1}, {1, 2}});
  PathDecomposition whole;
  whole.bags.push_back({plain_label(0), plain_label(1), plain_label(2)});
  auto ok = validate_path_decomposition(g, whole);
  CHECK(ok.valid);
  CHECK(ok.width == 2);

  PathDecomposition missing_edge;
  missing_edge.bags.push_back({plain_label(0), plain_label(1)});
  missing_edge.bags.push_back({plain_label(2)});
  auto bad = validate_path_decomposition(g, missing_edge);
  CHECK_FALSE(bad.valid);
  CHECK(bad.violation.find("edge not covered") != std::string::npos);

  PathDecomposition gap;
  gap.bags.push_back({plain_label(0), plain_label(1)});
  gap.bags.push_back({plain_label(1), plain_label(2)});
  gap.bags.push_back({plain_label(0), plain_label(2)});
  auto contig = validate_path_decomposition(g, gap);
  CHECK_FALSE(contig.valid);
  CHECK(contig.violation.find("inside its run") != std::string::npos);

  PathDecomposition unknown;
  unknown.bags.push_back({plain_label(7)});
  CHECK_FALSE(validate_path_decomposition(g, unknown).valid);
}

TEST_CASE("exact pathwidth of reference graphs") {
  Graph p5 = from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(exact_pathwidth(p5) == 1);
  Graph k4 = from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(exact_pathwidth(k4) == 3);
  Graph big;
  for (int v = 0; v < 21; ++v) big.add_vertex(plain_label(v));
  CHECK_THROWS_AS(exact_pathwidth(big), TooLarge);
}

TEST_CASE("exact pathwidth confirms the width bound on a micro instance") {
  F2Matrix a = sample_parity_check(1, 3, 2);
  CnfFormula f = encode_blocked_pathwidth(a, {1, 1, 0, 2});
  Contraction con = modular_contraction(incidence_graph(f));
  REQUIRE(con.graph.num_vertices() <= 20);
  CHECK(exact_pathwidth(con.graph) <= 1);
}

TEST_CASE("graph text round trip") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    F2Matrix a = sample_parity_check(2, 3, seed);
    Graph g = incidence_graph(encode_naive(a));
    CHECK(Graph::parse_text(g.to_text()) == g);
  }
  CHECK_THROWS_AS(Graph::parse_text("graph 2\nvertex 0 v 0\n"), ParseError);
}

TEST_CASE("decomposition text round trip") {
  PathDecomposition d = build_blocked_decomposition(2, 3);
  CHECK(PathDecomposition::parse_text(d.to_text()) == d);
}
