#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kcgen/cnf.hpp"
#include "kcgen/errors.hpp"

namespace kcgen {

/// Label of a graph vertex. X/Z/PlainVar mirror variable descriptors,
/// Clause carries the 0-based clause id. S and R name the contracted
/// accumulator and clause classes of a blocked instance: s_{l,j} and
/// r_{l,j} with l in [k], j in [n].
struct VertexLabel {
  enum class Kind : std::uint8_t { X, Z, PlainVar, Clause, S, R };
  Kind kind = Kind::PlainVar;
  int a = 0;
  int b = 0;

  std::string to_string() const;
  static VertexLabel parse(std::string_view text);

  friend auto operator<=>(const VertexLabel&, const VertexLabel&) = default;
};

inline VertexLabel x_label(int j) { return {VertexLabel::Kind::X, j, 0}; }
inline VertexLabel z_label(int i, int j) { return {VertexLabel::Kind::Z, i, j}; }
inline VertexLabel clause_label(int c) { return {VertexLabel::Kind::Clause, c, 0}; }
inline VertexLabel s_label(int l, int j) { return {VertexLabel::Kind::S, l, j}; }
inline VertexLabel r_label(int l, int j) { return {VertexLabel::Kind::R, l, j}; }
inline VertexLabel plain_label(int idx) { return {VertexLabel::Kind::PlainVar, idx, 0}; }

/// Undirected graph without self-loops; adjacency kept sorted.
class Graph {
 public:
  int add_vertex(VertexLabel label);
  void add_edge(int u, int v);

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  std::size_t num_edges() const { return num_edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  bool has_edge(int u, int v) const;
  const VertexLabel& label(int v) const { return labels_[v]; }
  std::optional<int> find_vertex(const VertexLabel& label) const;

  friend bool operator==(const Graph&, const Graph&) = default;

  std::string to_text() const;
  static Graph parse_text(std::string_view text);

 private:
  std::vector<VertexLabel> labels_;
  std::vector<std::vector<int>> adj_;
  std::size_t num_edges_ = 0;
};

/// Bipartite variable/clause graph of a CNF formula. Variable v gets vertex
/// id v-1; clause c gets vertex id num_vars + c.
Graph incidence_graph(const CnfFormula& f);

/// Partition of V into neighborhood-type classes:
/// u ~ v iff N(u) \ {v} = N(v) \ {u}. Classes are ordered by their smallest
/// member; members are sorted.
struct NeighborhoodPartition {
  std::vector<std::vector<int>> classes;
  std::size_t diversity() const { return classes.size(); }
};

NeighborhoodPartition neighborhood_partition(const Graph& g);

/// Result of contracting every neighborhood class to its lowest-id member.
struct Contraction {
  Graph graph;
  std::vector<int> vertex_map;  // original vertex -> contracted vertex
  NeighborhoodPartition classes;
};

Contraction modular_contraction(const Graph& g);

/// Ordered bags over vertex labels.
struct PathDecomposition {
  std::vector<std::vector<VertexLabel>> bags;

  /// Max bag size - 1 (labels counted once per bag).
  int width() const;

  std::string to_text() const;
  static PathDecomposition parse_text(std::string_view text);

  friend bool operator==(const PathDecomposition&, const PathDecomposition&) = default;
};

/// The explicit bag sequence B_2 .. B_{3n} over labels x_j, s_{l,j}, r_{l,j}
/// for a blocked instance with k row blocks and n columns; width 2k-1.
PathDecomposition build_blocked_decomposition(int k, int n);

struct DecompositionCheck {
  bool valid = false;
  int width = -1;
  std::string violation;  // empty when valid
};

/// Checks vertex coverage, edge coverage and contiguity. Labels resolve via
/// Graph::find_vertex, or through `resolve` when given (several labels may
/// map to one vertex).
DecompositionCheck validate_path_decomposition(const Graph& g, const PathDecomposition& d);
DecompositionCheck validate_path_decomposition(const Graph& g, const PathDecomposition& d,
                                               const std::map<VertexLabel, int>& resolve);

/// Maps the contracted labels x_j / s_{l,j} / r_{l,j} of a blocked instance onto
/// the vertices of its contracted incidence graph.
std::map<VertexLabel, int> map_blocked_labels(const CnfFormula& f, const Graph& incidence,
                                            const Contraction& con);

struct BlockedWidthCheck {
  bool valid = false;
  int width = -1;
  int contracted_vertices = 0;
  std::string violation;
};

/// Full pipeline for a blockpw formula: contract the incidence graph and
/// validate the explicit decomposition on it.
BlockedWidthCheck check_blocked_width(const CnfFormula& f);

/// Exact pathwidth via the vertex-separation dynamic program.
/// Throws TooLarge above 20 vertices.
int exact_pathwidth(const Graph& g);

}  // namespace kcgen
