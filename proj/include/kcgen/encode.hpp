#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kcgen/cnf.hpp"
#include "kcgen/f2.hpp"

namespace kcgen {

/// Generator parameters. Row blocks: k blocks of b equations each, m = k*b.
/// nd mode additionally uses the column-block factor c, with n = c*k*b and
/// column-block width w = b.
struct GeneratorParams {
  int k = 1;
  int b = 1;
  int c = 0;
  std::uint64_t seed = 0;
};

/// One parity-chain condition: z[row,hi_col] = z[row,lo_col] + sum of
/// a[row,j]*x_j over j in (lo_col, hi_col]. lo_col 0 stands for the
/// constant-0 left boundary. require_zero additionally forces
/// z[row,hi_col] = 0 (right-boundary fold).
struct ParityChainRow {
  int row = 0;
  int lo_col = 0;
  int hi_col = 0;
  bool require_zero = false;
  std::vector<int> x_cols;  // columns with a[row,j] = 1, ascending
};

/// Constraint in structured form: ordered scope plus its parity-chain rows.
struct AbstractConstraint {
  std::vector<int> scope;  // variable indices into the instance's table
  std::vector<ParityChainRow> rows;
};

/// A generated instance before (or instead of) clause materialization.
struct AbstractInstance {
  VariableTable vars;
  std::vector<AbstractConstraint> constraints;
  std::vector<int> unit_zero_vars;  // variables forced 0 by unit clauses
  Provenance provenance;
};

/// Structured text listing each constraint's scope and parity chains.
std::string write_abstract(const AbstractInstance& inst);

/// Builds the acceptance predicate of a constraint from its chain rows.
ConstraintBlock to_constraint_block(const VariableTable& vars, const AbstractConstraint& c);

/// Expands an abstract instance into canonical CNF.
CnfFormula materialize(const AbstractInstance& inst, std::size_t scope_cap = 20);

/// One constraint per matrix cell: z_{i,1} = a_{i,1} x_1 and
/// z_{i,j} = z_{i,j-1} + a_{ij} x_j, scopes of at most 3 variables,
/// plus unit clauses forcing z_{i,n} = 0.
AbstractInstance abstract_naive(const F2Matrix& a);
CnfFormula encode_naive(const F2Matrix& a);

/// Per column j and row block l, one constraint over {x_j} and the block's
/// accumulators at columns j-1 and j (scope at most 2b+1). The z_{i,n} = 0
/// check is folded into the last column's constraints.
AbstractInstance abstract_blocked_pathwidth(const F2Matrix& a, const GeneratorParams& p);
CnfFormula encode_blocked_pathwidth(const F2Matrix& a, const GeneratorParams& p,
                                    std::size_t scope_cap = 20);

/// Accumulators kept only at column-block boundaries j = s*b; per row block
/// r and column block s one constraint over all of X plus the 2b boundary
/// accumulators (scope n + 2b). z_{i,0} is eliminated; z_{i,n} = 0 is folded
/// into the last column block.
AbstractInstance abstract_neighborhood_diversity(const F2Matrix& a, const GeneratorParams& p);
CnfFormula encode_neighborhood_diversity(const F2Matrix& a, const GeneratorParams& p,
                                         std::size_t scope_cap = 20);

}  // namespace kcgen
