#include "kcgen/encode.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace kcgen {

namespace {

// Positions of a chain row's variables inside a constraint scope,
// precomputed for fast predicate evaluation.
struct RowEval {
  int hi_pos;
  int lo_pos;  // -1 for the constant-0 boundary
  std::uint64_t x_mask;
  bool require_zero;
};

int scope_position(const std::vector<int>& scope, int var) {
  auto it = std::find(scope.begin(), scope.end(), var);
  if (it == scope.end()) throw Error("chain variable missing from scope");
  return static_cast<int>(it - scope.begin());
}

}  // namespace

ConstraintBlock to_constraint_block(const VariableTable& vars, const AbstractConstraint& c) {
  if (c.scope.size() > 63) throw ScopeTooLarge("scope too large to enumerate");
  std::vector<RowEval> evals;
  evals.reserve(c.rows.size());
  for (const auto& row : c.rows) {
    RowEval e{};
    e.hi_pos = scope_position(c.scope, vars.z_var(row.row, row.hi_col));
    e.lo_pos = (row.lo_col == 0 || !vars.has_z(row.row, row.lo_col))
                   ? -1
                   : scope_position(c.scope, vars.z_var(row.row, row.lo_col));
    if (row.lo_col != 0 && e.lo_pos < 0) throw Error("left boundary missing");
    e.x_mask = 0;
    for (int col : row.x_cols)
      e.x_mask |= std::uint64_t{1} << scope_position(c.scope, vars.x_var(col));
    e.require_zero = row.require_zero;
    evals.push_back(e);
  }
  ConstraintBlock block;
  block.scope = c.scope;
  block.accepts = [evals = std::move(evals)](std::uint64_t a) {
    for (const auto& e : evals) {
      bool hi = (a >> e.hi_pos) & 1;
      bool lo = e.lo_pos >= 0 && ((a >> e.lo_pos) & 1);
      bool sum = std::popcount(a & e.x_mask) & 1;
      if (hi != (lo ^ sum)) return false;
      if (e.require_zero && hi) return false;
    }
    return true;
  };
  return block;
}

CnfFormula materialize(const AbstractInstance& inst, std::size_t scope_cap) {
  CnfFormula f;
  f.vars = inst.vars;
  f.provenance = inst.provenance;
  for (const auto& c : inst.constraints) {
    if (c.scope.size() > scope_cap)
      throw ScopeTooLarge("constraint scope has " + std::to_string(c.scope.size()) +
                          " variables, cap is " + std::to_string(scope_cap) +
                          "; use abstract-instance mode");
    auto clauses = constraint_to_clauses(to_constraint_block(inst.vars, c), scope_cap);
    for (auto& cl : clauses) f.clauses.push_back(std::move(cl));
  }
  for (int v : inst.unit_zero_vars) f.clauses.push_back({-v});
  return f;
}

AbstractInstance abstract_naive(const F2Matrix& a) {
  const int m = static_cast<int>(a.num_rows());
  const int n = static_cast<int>(a.num_cols());
  if (n < 1) throw ParameterMismatch("naive encoding requires n >= 1");

  AbstractInstance inst;
  for (int j = 1; j <= n; ++j) inst.vars.add({VarRole::X, 0, j});
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) inst.vars.add({VarRole::Z, i, j});

  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      AbstractConstraint c;
      c.scope.push_back(inst.vars.x_var(j));
      if (j >= 2) c.scope.push_back(inst.vars.z_var(i, j - 1));
      c.scope.push_back(inst.vars.z_var(i, j));
      ParityChainRow row;
      row.row = i;
      row.lo_col = j - 1;
      row.hi_col = j;
      if (a.get(i - 1, j - 1)) row.x_cols.push_back(j);
      c.rows.push_back(std::move(row));
      inst.constraints.push_back(std::move(c));
    }
    inst.unit_zero_vars.push_back(inst.vars.z_var(i, n));
  }
  inst.provenance.mode = GeneratorMode::Naive;
  inst.provenance.matrix = a;
  return inst;
}

CnfFormula encode_naive(const F2Matrix& a) {
  return materialize(abstract_naive(a), 20);
}

AbstractInstance abstract_blocked_pathwidth(const F2Matrix& a, const GeneratorParams& p) {
  const int m = static_cast<int>(a.num_rows());
  const int n = static_cast<int>(a.num_cols());
  if (p.k < 1 || p.b < 1 || m != p.k * p.b)
    throw ParameterMismatch("blocked mode requires m = k*b");
  if (n < 2) throw ParameterMismatch("blocked mode requires n >= 2");

  AbstractInstance inst;
  for (int j = 1; j <= n; ++j) inst.vars.add({VarRole::X, 0, j});
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= n; ++j) inst.vars.add({VarRole::Z, i, j});

  for (int j = 1; j <= n; ++j) {
    for (int l = 0; l < p.k; ++l) {
      AbstractConstraint c;
      c.scope.push_back(inst.vars.x_var(j));
      if (j >= 2)
        for (int i = l * p.b + 1; i <= (l + 1) * p.b; ++i)
          c.scope.push_back(inst.vars.z_var(i, j - 1));
      for (int i = l * p.b + 1; i <= (l + 1) * p.b; ++i)
        c.scope.push_back(inst.vars.z_var(i, j));
      for (int i = l * p.b + 1; i <= (l + 1) * p.b; ++i) {
        ParityChainRow row;
        row.row = i;
        row.lo_col = j - 1;
        row.hi_col = j;
        row.require_zero = (j == n);
        if (a.get(i - 1, j - 1)) row.x_cols.push_back(j);
        c.rows.push_back(std::move(row));
      }
      inst.constraints.push_back(std::move(c));
    }
  }
  inst.provenance.mode = GeneratorMode::BlockPathwidth;
  inst.provenance.k = p.k;
  inst.provenance.b = p.b;
  inst.provenance.seed = p.seed;
  inst.provenance.matrix = a;
  return inst;
}

CnfFormula encode_blocked_pathwidth(const F2Matrix& a, const GeneratorParams& p,
                                    std::size_t scope_cap) {
  return materialize(abstract_blocked_pathwidth(a, p), scope_cap);
}

AbstractInstance abstract_neighborhood_diversity(const F2Matrix& a,
                                                 const GeneratorParams& p) {
  const int m = static_cast<int>(a.num_rows());
  const int n = static_cast<int>(a.num_cols());
  const int w = p.b;
  if (p.k < 1 || p.b < 1 || p.c < 1 || m != p.k * p.b || n != p.c * p.k * p.b)
    throw ParameterMismatch("nd mode requires m = k*b and n = c*k*b");

  // Column blocks of width w = b; their boundaries 0, w, ..., n partition
  // the columns into c*k blocks.
  const int col_blocks = p.c * p.k;
  AbstractInstance inst;
  for (int j = 1; j <= n; ++j) inst.vars.add({VarRole::X, 0, j});
  for (int i = 1; i <= m; ++i)
    for (int s = 1; s <= col_blocks; ++s) inst.vars.add({VarRole::Z, i, s * w});

  for (int r = 1; r <= p.k; ++r) {
    for (int s = 1; s <= col_blocks; ++s) {
      AbstractConstraint c;
      for (int j = 1; j <= n; ++j) c.scope.push_back(inst.vars.x_var(j));
      if (s >= 2)
        for (int i = (r - 1) * p.b + 1; i <= r * p.b; ++i)
          c.scope.push_back(inst.vars.z_var(i, (s - 1) * w));
      for (int i = (r - 1) * p.b + 1; i <= r * p.b; ++i)
        c.scope.push_back(inst.vars.z_var(i, s * w));
      for (int i = (r - 1) * p.b + 1; i <= r * p.b; ++i) {
        ParityChainRow row;
        row.row = i;
        row.lo_col = (s - 1) * w;
        row.hi_col = s * w;
        row.require_zero = (s == col_blocks);
        for (int j = (s - 1) * w + 1; j <= s * w; ++j)
          if (a.get(i - 1, j - 1)) row.x_cols.push_back(j);
        c.rows.push_back(std::move(row));
      }
      inst.constraints.push_back(std::move(c));
    }
  }
  inst.provenance.mode = GeneratorMode::NeighborhoodDiversity;
  inst.provenance.k = p.k;
  inst.provenance.b = p.b;
  inst.provenance.c = p.c;
  inst.provenance.seed = p.seed;
  inst.provenance.matrix = a;
  return inst;
}

CnfFormula encode_neighborhood_diversity(const F2Matrix& a, const GeneratorParams& p,
                                         std::size_t scope_cap) {
  return materialize(abstract_neighborhood_diversity(a, p), scope_cap);
}

namespace {

std::string var_token(const VariableTable& vars, int v) {
  const auto& d = vars.descriptor(v);
  std::ostringstream out;
  if (d.role == VarRole::X)
    out << 'x' << d.j;
  else if (d.role == VarRole::Z)
    out << "z[" << d.i << ',' << d.j << ']';
  else
    out << 'v' << d.j;
  return out.str();
}

}  // namespace

std::string write_abstract(const AbstractInstance& inst) {
  std::ostringstream out;
  out << "abstract-instance v1\n";
  const auto& p = inst.provenance;
  out << "generator " << mode_name(p.mode) << " k=" << p.k << " b=" << p.b
      << " c=" << p.c << " seed=" << p.seed << '\n';
  if (p.matrix) {
    out << "matrix " << p.matrix->num_rows() << ' ' << p.matrix->num_cols() << '\n';
    for (std::size_t i = 0; i < p.matrix->num_rows(); ++i)
      out << "row " << p.matrix->row(i).to_string() << '\n';
  }
  out << "vars " << inst.vars.size() << '\n';
  for (std::size_t idx = 0; idx < inst.constraints.size(); ++idx) {
    const auto& c = inst.constraints[idx];
    out << "constraint " << idx + 1 << '\n';
    out << "scope";
    for (int v : c.scope) out << ' ' << var_token(inst.vars, v);
    out << '\n';
    for (const auto& row : c.rows) {
      out << "chain z[" << row.row << ',' << row.hi_col << "] = ";
      if (row.lo_col == 0)
        out << '0';
      else
        out << "z[" << row.row << ',' << row.lo_col << ']';
      out << " + sum a[" << row.row << ",j]*x[j], j=" << row.lo_col + 1 << ".."
          << row.hi_col << '\n';
      if (row.require_zero)
        out << "require z[" << row.row << ',' << row.hi_col << "] = 0\n";
    }
  }
  for (int v : inst.unit_zero_vars)
    out << "unit -" << var_token(inst.vars, v) << '\n';
  out << "end\n";
  return out.str();
}

}  // namespace kcgen
