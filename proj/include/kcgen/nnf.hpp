#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kcgen/bigint.hpp"
#include "kcgen/errors.hpp"

namespace kcgen {

/// Rooted DAG in negation normal form. Nodes are literals, ANDs or ORs;
/// the constants are the empty AND (true) and the empty OR (false).
/// Children always precede parents in the node array; the last node is the
/// single sink. OR nodes may carry the decision variable (0 if none).
class NnfCircuit {
 public:
  enum class Kind : std::uint8_t { Literal, And, Or };

  struct Node {
    Kind kind = Kind::And;
    int literal = 0;       // signed DIMACS literal, Kind::Literal only
    int decision_var = 0;  // 0 when not a decision node, Kind::Or only
    std::vector<int> children;

    friend bool operator==(const Node&, const Node&) = default;
  };

  int add_literal(int lit);
  int add_and(std::vector<int> children);
  int add_or(std::vector<int> children, int decision_var = 0);
  int add_true() { return add_and({}); }
  int add_false() { return add_or({}); }

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  std::size_t num_edges() const { return num_edges_; }
  const Node& node(int id) const { return nodes_[id]; }
  int sink() const { return num_nodes() - 1; }

  bool is_true_node(int id) const {
    return nodes_[id].kind == Kind::And && nodes_[id].children.empty();
  }
  bool is_false_node(int id) const {
    return nodes_[id].kind == Kind::Or && nodes_[id].children.empty();
  }

  /// Variables occurring in the circuit, ascending.
  std::vector<int> variables() const;

  friend bool operator==(const NnfCircuit&, const NnfCircuit&) = default;

 private:
  std::vector<Node> nodes_;
  std::size_t num_edges_ = 0;
};

/// Total assignment over an explicit variable scope.
struct Assignment {
  std::vector<int> scope;  // ascending variable indices
  std::uint64_t bits = 0;  // bit t = value of scope[t]

  bool value(int var) const;
  bool covers(int var) const;
};

/// Text format, one node per line in topological order, last line = sink:
///   nnf <nodes> <edges> <vars>
///   L <lit> | A <count> <ids...> | O <decision-var-or-0> <count> <ids...>
std::string write_nnf(const NnfCircuit& c);
NnfCircuit parse_nnf(std::string_view text);

/// Checks every AND node for pairwise disjoint child variable sets.
/// Returns the violating node ids (empty = decomposable).
std::vector<int> check_decomposable(const NnfCircuit& c);

/// Checks every OR node for pairwise disjoint child model sets by brute
/// force over var(c). Throws TooLarge above 20 variables.
std::vector<int> check_deterministic(const NnfCircuit& c);

/// Min/max evaluation; returns the sink value.
bool evaluate(const NnfCircuit& c, const Assignment& a);

/// Existential quantification of `vars`: their literals become constant 1.
/// Requires a decomposable circuit; node and edge counts never increase.
NnfCircuit forget(const NnfCircuit& c, const std::vector<int>& vars);

/// Exact model count over `over` (a superset of var(c)) with smoothing
/// applied on the fly. Requires decomposability; determinism is verified
/// by brute force when var(c) has at most 16 variables and is otherwise a
/// documented precondition.
BigInt count_models(const NnfCircuit& c, const std::vector<int>& over);

}  // namespace kcgen
