#include <doctest.h>

#include <algorithm>
#include <random>

#include "kcgen/cnf.hpp"
#include "kcgen/encode.hpp"

using namespace kcgen;

namespace {

CnfFormula tiny(int vars, std::vector<Clause> clauses) {
  CnfFormula f;
  f.vars = VariableTable::plain(vars);
  f.clauses = std::move(clauses);
  return f;
}

}  // namespace

TEST_CASE("constraint compilation to canonical clauses") {
  ConstraintBlock only_00{{1, 2}, [](std::uint64_t a) { return a == 0; }};
  auto c1 = constraint_to_clauses(only_00);
  REQUIRE(c1.size() == 3);
  for (const auto& cl : c1) CHECK(cl.size() == 2);

  ConstraintBlock all{{1, 2}, [](std::uint64_t) { return true; }};
  CHECK(constraint_to_clauses(all).empty());

  ConstraintBlock xor_even{{1, 2}, [](std::uint64_t a) {
                             return ((a & 1) ^ ((a >> 1) & 1)) == 0;
                           }};
  auto c3 = constraint_to_clauses(xor_even);
  REQUIRE(c3.size() == 2);
  CHECK(c3[0] == Clause{-1, 2});
  CHECK(c3[1] == Clause{1, -2});

  ConstraintBlock big{std::vector<int>(21), [](std::uint64_t) { return true; }};
  for (int t = 0; t < 21; ++t) big.scope[t] = t + 1;
  CHECK_THROWS_AS(constraint_to_clauses(big), ScopeTooLarge);
}

TEST_CASE("formula size counts literal occurrences") {
  CHECK(formula_size(tiny(2, {{1, 2}, {-1}})) == 3);
  CHECK(formula_size(tiny(3, {})) == 0);
}

TEST_CASE("formula size of the naive encoding of [1 1]") {
  CnfFormula f = encode_naive(F2Matrix::from_rows({"11"}));
  // independent recount walking the clause list
  std::size_t total = 0;
  for (const auto& cl : f.clauses) total += cl.size();
  CHECK(total == 17);
  CHECK(formula_size(f) == total);
}

TEST_CASE("solution projection basics") {
  CnfFormula f = tiny(2, {{1, 2}});
  auto proj = solution_projection(f, {1}, 100);
  CHECK(proj.rows == std::vector<std::uint64_t>{0, 1});

  auto empty_scope = solution_projection(f, {}, 100);
  CHECK(empty_scope.rows == std::vector<std::uint64_t>{0});

  CnfFormula big = tiny(25, {});
  CHECK_THROWS_AS(solution_projection(big, {1}, 100), CapExceeded);
}

TEST_CASE("solution projection of a blocked instance gives the codewords") {
  F2Matrix a = sample_parity_check(2, 4, 3);
  CnfFormula f = encode_blocked_pathwidth(a, {1, 2, 0, 3});
  auto proj = solution_projection(f, f.vars.x_vars(), 1u << 16);
  auto words = LinearCode(a).enumerate_codewords(1u << 16);
  REQUIRE(proj.rows.size() == words.size());
  for (const auto& w : words) {
    std::uint64_t row = 0;
    for (std::size_t j = 0; j < 4; ++j)
      if (w.get(j)) row |= std::uint64_t{1} << j;
    CHECK(std::binary_search(proj.rows.begin(), proj.rows.end(), row));
  }
}

TEST_CASE("dimacs header and role comments") {
  CnfFormula f = encode_naive(F2Matrix::from_rows({"11"}));
  std::string text = write_dimacs(f);
  CHECK(text.find("p cnf 4 7") != std::string::npos);
  CHECK(text.find("c var 1 = x 1") != std::string::npos);
  CHECK(text.find("c var 3 = z 1 1") != std::string::npos);
  CHECK(text.find("c generator naive") != std::string::npos);
}

TEST_CASE("dimacs round trip on random micro formulas") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    int vars = 1 + rng() % 6;
    int num_clauses = rng() % 8;
    CnfFormula f;
    f.vars = VariableTable::plain(vars);
    for (int c = 0; c < num_clauses; ++c) {
      Clause cl;
      for (int v = 1; v <= vars; ++v) {
        switch (rng() % 3) {
          case 0:
            cl.push_back(v);
            break;
          case 1:
            cl.push_back(-v);
            break;
          default:
            break;
        }
      }
      f.clauses.push_back(cl);
    }
    CHECK(parse_dimacs(write_dimacs(f)) == f);
  }
}

TEST_CASE("dimacs round trip keeps roles and provenance") {
  F2Matrix a = sample_parity_check(2, 4, 3);
  CnfFormula f = encode_blocked_pathwidth(a, {1, 2, 0, 3});
  CnfFormula g = parse_dimacs(write_dimacs(f));
  CHECK(g == f);
  CHECK(g.provenance.matrix == a);
  CHECK(g.vars.z_var(1, 2) == f.vars.z_var(1, 2));
}

TEST_CASE("role comments map indices to descriptors and survive round trips") {
  std::string text =
      "c var 1 = x 1\n"
      "c var 2 = x 2\n"
      "c var 3 = z 1 2\n"
      "p cnf 3 1\n"
      "1 -3 0\n";
  CnfFormula f = parse_dimacs(text);
  CHECK(f.vars.descriptor(3) == VarDescriptor{VarRole::Z, 1, 2});
  CHECK(f.vars.z_var(1, 2) == 3);
  CnfFormula again = parse_dimacs(write_dimacs(f));
  CHECK(again == f);
  CHECK(again.vars.descriptor(3) == VarDescriptor{VarRole::Z, 1, 2});
}

TEST_CASE("dimacs parse errors carry line numbers") {
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);   // missing 0
  CHECK_THROWS_AS(parse_dimacs("1 0\n"), ParseError);              // clause first
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);   // var range
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 1 0\n"), ParseError); // repeated var
  try {
    parse_dimacs("p cnf 2 1\n1 -1 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line_number == 2);
  }
}
