#pragma once

// Random circuit generators shared by the unit and acceptance suites.

#include <map>
#include <random>

#include "kcgen/nnf.hpp"

namespace kcgen::testgen {

// Independent evaluator, straight from the recursive min/max definition.
inline bool eval_recursive(const NnfCircuit& c, int id, const std::map<int, bool>& tau) {
  const auto& n = c.node(id);
  switch (n.kind) {
    case NnfCircuit::Kind::Literal: {
      int v = n.literal > 0 ? n.literal : -n.literal;
      bool bit = tau.at(v);
      return (n.literal > 0) == bit;
    }
    case NnfCircuit::Kind::And: {
      bool value = true;
      for (int ch : n.children) value = std::min(value, eval_recursive(c, ch, tau));
      return value;
    }
    case NnfCircuit::Kind::Or: {
      bool value = false;
      for (int ch : n.children) value = std::max(value, eval_recursive(c, ch, tau));
      return value;
    }
  }
  return false;
}

// Random NNF over variables 1..nv with a single sink gathering loose ends.
inline NnfCircuit random_nnf(std::mt19937_64& rng, int nv, int inner_nodes) {
  NnfCircuit c;
  for (int v = 1; v <= nv; ++v) {
    c.add_literal(v);
    c.add_literal(-v);
  }
  for (int t = 0; t < inner_nodes; ++t) {
    std::size_t count = 1 + rng() % 3;
    std::vector<int> children;
    for (std::size_t i = 0; i < count; ++i)
      children.push_back(static_cast<int>(rng() % c.num_nodes()));
    if (rng() & 1)
      c.add_and(std::move(children));
    else
      c.add_or(std::move(children));
  }
  std::vector<char> has_parent(c.num_nodes(), 0);
  for (int id = 0; id < c.num_nodes(); ++id)
    for (int ch : c.node(id).children) has_parent[ch] = 1;
  std::vector<int> loose;
  for (int id = 0; id < c.num_nodes(); ++id)
    if (!has_parent[id]) loose.push_back(id);
  if (rng() & 1)
    c.add_or(std::move(loose));
  else
    c.add_and(std::move(loose));
  return c;
}

// Random decomposable circuit over an explicit variable set.
inline int gen_decomposable(NnfCircuit& c, std::vector<int> vars, std::mt19937_64& rng,
                            int depth) {
  if (vars.empty()) return (rng() & 1) ? c.add_true() : c.add_false();
  if (vars.size() == 1 || depth == 0) {
    int v = vars[rng() % vars.size()];
    return c.add_literal((rng() & 1) ? v : -v);
  }
  if (rng() & 1) {
    std::size_t cut = 1 + rng() % (vars.size() - 1);
    std::vector<int> left(vars.begin(), vars.begin() + cut);
    std::vector<int> right(vars.begin() + cut, vars.end());
    int a = gen_decomposable(c, left, rng, depth - 1);
    int b = gen_decomposable(c, right, rng, depth - 1);
    return c.add_and({a, b});
  }
  int a = gen_decomposable(c, vars, rng, depth - 1);
  int b = gen_decomposable(c, vars, rng, depth - 1);
  return c.add_or({a, b});
}

inline NnfCircuit random_decomposable(std::mt19937_64& rng, int nv, int depth) {
  NnfCircuit c;
  std::vector<int> vars;
  for (int v = 1; v <= nv; ++v) vars.push_back(v);
  gen_decomposable(c, vars, rng, depth);
  return c;
}

// Decision tree of an arbitrary boolean function; a d-DNNF by construction.
inline int decision_tree(NnfCircuit& c, const std::vector<int>& vars, std::size_t pos,
                         const std::vector<bool>& table, std::size_t offset) {
  if (pos == vars.size()) return table[offset] ? c.add_true() : c.add_false();
  int lo = decision_tree(c, vars, pos + 1, table, offset);
  int hi = decision_tree(c, vars, pos + 1, table, offset | (std::size_t{1} << pos));
  int v = vars[pos];
  int left = c.add_and({c.add_literal(-v), lo});
  int right = c.add_and({c.add_literal(v), hi});
  return c.add_or({left, right}, v);
}

}  // namespace kcgen::testgen
