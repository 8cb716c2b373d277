#include <doctest.h>

#include <map>
#include <random>

#include "circuit_gen.hpp"
#include "kcgen/nnf.hpp"

using namespace kcgen;
using namespace kcgen::testgen;

namespace {

Assignment full_assignment(const std::vector<int>& vars, std::uint64_t bits) {
  return Assignment{vars, bits};
}

std::vector<bool> truth_table(const NnfCircuit& c, const std::vector<int>& vars) {
  std::vector<bool> table(std::size_t{1} << vars.size());
  for (std::uint64_t bits = 0; bits < table.size(); ++bits)
    table[bits] = evaluate(c, full_assignment(vars, bits));
  return table;
}

}  // namespace

TEST_CASE("nnf text round trip on random circuits") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    NnfCircuit c = random_nnf(rng, 1 + rng() % 5, 1 + rng() % 12);
    NnfCircuit back = parse_nnf(write_nnf(c));
    CHECK(back == c);
    CHECK(write_nnf(back) == write_nnf(c));
  }
}

TEST_CASE("nnf format details") {
  NnfCircuit c = parse_nnf("nnf 3 2 2\nL 1\nL -2\nA 2 0 1\n");
  CHECK(c.num_nodes() == 3);
  CHECK(c.num_edges() == 2);
  CHECK(c.node(2).kind == NnfCircuit::Kind::And);

  // forward reference
  CHECK_THROWS_AS(parse_nnf("nnf 2 1 1\nA 1 1\nL 1\n"), ParseError);
  // two sinks
  CHECK_THROWS_AS(parse_nnf("nnf 2 0 2\nL 1\nL 2\n"), MultipleSinks);
  // header mismatch
  CHECK_THROWS_AS(parse_nnf("nnf 2 0 1\nL 1\n"), ParseError);
}

TEST_CASE("decomposability check") {
  NnfCircuit ok;
  ok.add_and({ok.add_literal(1), ok.add_literal(2)});
  CHECK(check_decomposable(ok).empty());

  NnfCircuit bad;
  int x = bad.add_literal(1);
  bad.add_and({x, x});
  CHECK(check_decomposable(bad) == std::vector<int>{1});

  NnfCircuit shared;
  int sx = shared.add_literal(1);
  int sy = shared.add_literal(2);
  int o = shared.add_or({sx, sy});
  shared.add_and({o, sx});
  CHECK(check_decomposable(shared) == std::vector<int>{3});
}

TEST_CASE("determinism check") {
  NnfCircuit det;
  int x = det.add_literal(1), nx = det.add_literal(-1);
  int y = det.add_literal(2), ny = det.add_literal(-2);
  det.add_or({det.add_and({x, ny}), det.add_and({nx, y})});
  CHECK(check_deterministic(det).empty());

  NnfCircuit overlap;
  overlap.add_or({overlap.add_literal(1), overlap.add_literal(2)});
  CHECK(check_deterministic(overlap) == std::vector<int>{2});

  NnfCircuit big;
  std::vector<int> lits;
  for (int v = 1; v <= 21; ++v) lits.push_back(big.add_literal(v));
  big.add_and(std::move(lits));
  CHECK_THROWS_AS(check_deterministic(big), TooLarge);
}

TEST_CASE("evaluation basics") {
  NnfCircuit one;
  one.add_true();
  CHECK(evaluate(one, full_assignment({}, 0)));

  NnfCircuit taut;
  taut.add_or({taut.add_literal(1), taut.add_literal(-1)});
  CHECK(evaluate(taut, full_assignment({1}, 0)));

  NnfCircuit lit;
  lit.add_literal(3);
  CHECK_THROWS_AS(evaluate(lit, full_assignment({1}, 0)), IncompleteAssignment);
}

TEST_CASE("evaluation matches the recursive definition") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    int nv = 1 + rng() % 4;
    NnfCircuit c = random_nnf(rng, nv, 1 + rng() % 10);
    std::vector<int> vars;
    for (int v = 1; v <= nv; ++v) vars.push_back(v);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << nv); ++bits) {
      std::map<int, bool> tau;
      for (int v = 1; v <= nv; ++v) tau[v] = (bits >> (v - 1)) & 1;
      CHECK(evaluate(c, full_assignment(vars, bits)) ==
            eval_recursive(c, c.sink(), tau));
    }
  }
}

TEST_CASE("forgetting a variable of a conjunction") {
  NnfCircuit c;
  c.add_and({c.add_literal(1), c.add_literal(2)});
  NnfCircuit g = forget(c, {2});
  // the result computes the function x1
  CHECK(truth_table(g, {1}) == std::vector<bool>{false, true});
  CHECK(g.num_nodes() <= c.num_nodes());
  CHECK(g.num_edges() <= c.num_edges());
}

TEST_CASE("forgetting everything in a satisfiable circuit yields constant 1") {
  NnfCircuit c;
  c.add_or({c.add_literal(1), c.add_literal(2)});
  NnfCircuit g = forget(c, {1, 2});
  CHECK(truth_table(g, {}) == std::vector<bool>{true});
}

TEST_CASE("forgetting requires decomposability") {
  NnfCircuit bad;
  int x = bad.add_literal(1);
  bad.add_and({x, x});
  CHECK_THROWS_AS(forget(bad, {1}), NotDecomposable);
}

TEST_CASE("forget soundness on random decomposable circuits") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 60; ++trial) {
    int nv = 2 + rng() % 4;
    NnfCircuit c = random_decomposable(rng, nv, 3);
    std::vector<int> all;
    for (int v = 1; v <= nv; ++v) all.push_back(v);

    std::vector<int> drop, kept;
    for (int v = 1; v <= nv; ++v) ((rng() & 1) ? drop : kept).push_back(v);

    NnfCircuit g = forget(c, drop);
    CHECK(g.num_nodes() <= c.num_nodes());
    CHECK(g.num_edges() <= c.num_edges());
    CHECK(check_decomposable(g).empty());

    // oracle: existential projection of the truth table
    auto full = truth_table(c, all);
    std::vector<bool> projected(std::size_t{1} << kept.size(), false);
    for (std::uint64_t bits = 0; bits < full.size(); ++bits) {
      if (!full[bits]) continue;
      std::uint64_t key = 0;
      for (std::size_t t = 0; t < kept.size(); ++t)
        if ((bits >> (kept[t] - 1)) & 1) key |= std::uint64_t{1} << t;
      projected[key] = true;
    }
    std::vector<bool> got(projected.size());
    for (std::uint64_t bits = 0; bits < got.size(); ++bits)
      got[bits] = evaluate(g, full_assignment(kept, bits));
    CHECK(got == projected);
  }
}

TEST_CASE("model counting on reference circuits") {
  NnfCircuit c;
  decision_tree(c, {1, 2}, 0, {false, true, true, true}, 0);  // x or y
  CHECK(count_models(c, {1, 2}) == 3);

  NnfCircuit one;
  one.add_true();
  CHECK(count_models(one, {1, 2, 3, 4, 5}) == 32);

  NnfCircuit overlap;
  overlap.add_or({overlap.add_literal(1), overlap.add_literal(2)});
  CHECK_THROWS_AS(count_models(overlap, {1, 2}), NotDeterministic);

  NnfCircuit bad;
  int x = bad.add_literal(1);
  bad.add_and({x, x});
  CHECK_THROWS_AS(count_models(bad, {1}), NotDecomposable);
}

TEST_CASE("model count equals brute-force enumeration on random functions") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    int nv = 1 + rng() % 4;
    std::vector<int> vars;
    for (int v = 1; v <= nv; ++v) vars.push_back(v);
    std::vector<bool> table(std::size_t{1} << nv);
    for (auto&& bit : table) bit = rng() & 1;
    NnfCircuit c;
    decision_tree(c, vars, 0, table, 0);
    CHECK(check_decomposable(c).empty());
    CHECK(check_deterministic(c).empty());
    std::size_t ones = 0;
    for (bool bit : table) ones += bit;
    CHECK(count_models(c, vars) == BigInt(ones));
  }
}
