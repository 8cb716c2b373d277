#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kcgen/errors.hpp"
#include "kcgen/f2.hpp"

namespace kcgen {

enum class VarRole : std::uint8_t { X, Z, Plain };

/// Descriptor of one CNF variable. X(j): code bit x_j, j in [n].
/// Z(i,j): parity accumulator z_{i,j}, i in [m], j in [0..n].
/// Plain: unlabeled variable from external DIMACS.
struct VarDescriptor {
  VarRole role = VarRole::Plain;
  int i = 0;  // row for Z, unused for X/Plain
  int j = 0;  // column for Z, index for X, DIMACS index for Plain

  friend bool operator==(const VarDescriptor&, const VarDescriptor&) = default;
};

/// Bijection between variable descriptors and 1-based DIMACS indices.
/// X variables occupy the lowest indices (x_j maps to index j).
class VariableTable {
 public:
  VariableTable() = default;

  static VariableTable plain(int count);

  /// Appends a descriptor, returns its DIMACS index.
  int add(VarDescriptor d);

  int size() const { return static_cast<int>(descs_.size()); }
  const VarDescriptor& descriptor(int index) const { return descs_[index - 1]; }

  int x_var(int j) const;
  /// Index of z_{i,j}; throws if that accumulator does not exist.
  int z_var(int i, int j) const;
  bool has_z(int i, int j) const;

  /// Indices of all X variables, ascending.
  std::vector<int> x_vars() const;
  /// Indices of all Z variables, ascending.
  std::vector<int> z_vars() const;

  friend bool operator==(const VariableTable&, const VariableTable&) = default;

 private:
  std::vector<VarDescriptor> descs_;
  std::vector<std::pair<std::pair<int, int>, int>> z_index_;  // sorted (i,j) -> idx
  int num_x_ = 0;
};

/// Clause as a list of DIMACS literals (+v / -v), no variable twice.
using Clause = std::vector<int>;

enum class GeneratorMode : std::uint8_t { None, Naive, BlockPathwidth, NeighborhoodDiversity };

std::string_view mode_name(GeneratorMode mode);
std::optional<GeneratorMode> mode_from_name(std::string_view name);

/// Which generator produced a formula and from what inputs.
struct Provenance {
  GeneratorMode mode = GeneratorMode::None;
  int k = 0;
  int b = 0;
  int c = 0;
  std::uint64_t seed = 0;
  std::optional<F2Matrix> matrix;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct CnfFormula {
  VariableTable vars;
  std::vector<Clause> clauses;
  Provenance provenance;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Sum of clause lengths (number of literal occurrences).
std::size_t formula_size(const CnfFormula& f);

/// Multi-variable constraint given by an ordered scope and an acceptance
/// predicate over scope assignments. Bit t of an assignment is the value
/// of scope[t].
struct ConstraintBlock {
  std::vector<int> scope;  // DIMACS indices, no duplicates
  std::function<bool(std::uint64_t)> accepts;
};

/// Canonical CNF of a constraint: one clause per non-accepted scope
/// assignment, every clause containing all scope variables. Assignments
/// are enumerated in increasing counter order; literals follow scope order.
std::vector<Clause> constraint_to_clauses(const ConstraintBlock& block,
                                          std::size_t scope_cap = 20);

/// Set of projections of the models of f onto `vars`. Bit t of each row is
/// the value of vars[t]; rows are sorted and deduplicated.
struct ProjectedAssignments {
  std::vector<int> vars;
  std::vector<std::uint64_t> rows;

  friend bool operator==(const ProjectedAssignments&, const ProjectedAssignments&) = default;
};

/// Brute-force model projection. Throws CapExceeded if the formula has more
/// than 24 variables or the projected set would exceed cap.
ProjectedAssignments solution_projection(const CnfFormula& f,
                                         const std::vector<int>& vars,
                                         std::size_t cap);

/// True iff the assignment (bit v-1 = value of variable v) satisfies f.
bool satisfies(const CnfFormula& f, std::uint64_t assignment);

/// DIMACS with role comments:
///   c generator <naive|blockpw|nd> k=<k> b=<b> c=<c> seed=<s>
///   c matrix <m> <n> / c row <bits>   (embedded parity-check matrix)
///   c var <idx> = x <j> / c var <idx> = z <i> <j>
std::string write_dimacs(const CnfFormula& f);
CnfFormula parse_dimacs(std::string_view text);

}  // namespace kcgen
