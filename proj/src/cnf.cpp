#include "kcgen/cnf.hpp"

#include <algorithm>
#include <sstream>

namespace kcgen {

VariableTable VariableTable::plain(int count) {
  VariableTable t;
  for (int v = 1; v <= count; ++v) t.add({VarRole::Plain, 0, v});
  return t;
}

int VariableTable::add(VarDescriptor d) {
  if (d.role == VarRole::X) {
    if (num_x_ + 1 != static_cast<int>(descs_.size()) + 1 || d.j != num_x_ + 1)
      throw Error("X variables must occupy the lowest indices in order");
    ++num_x_;
  }
  descs_.push_back(d);
  int idx = static_cast<int>(descs_.size());
  if (d.role == VarRole::Z) {
    auto key = std::make_pair(std::make_pair(d.i, d.j), idx);
    auto pos = std::lower_bound(z_index_.begin(), z_index_.end(), key);
    if (pos != z_index_.end() && pos->first == key.first)
      throw Error("duplicate z descriptor");
    z_index_.insert(pos, key);
  }
  return idx;
}

int VariableTable::x_var(int j) const {
  if (j < 1 || j > num_x_) throw Error("no such x variable");
  return j;
}

bool VariableTable::has_z(int i, int j) const {
  auto key = std::make_pair(i, j);
  auto pos = std::lower_bound(
      z_index_.begin(), z_index_.end(), key,
      [](const auto& entry, const auto& k) { return entry.first < k; });
  return pos != z_index_.end() && pos->first == key;
}

int VariableTable::z_var(int i, int j) const {
  auto key = std::make_pair(i, j);
  auto pos = std::lower_bound(
      z_index_.begin(), z_index_.end(), key,
      [](const auto& entry, const auto& k) { return entry.first < k; });
  if (pos == z_index_.end() || pos->first != key) throw Error("no such z variable");
  return pos->second;
}

std::vector<int> VariableTable::x_vars() const {
  std::vector<int> out;
  for (int v = 1; v <= size(); ++v)
    if (descs_[v - 1].role == VarRole::X) out.push_back(v);
  return out;
}

std::vector<int> VariableTable::z_vars() const {
  std::vector<int> out;
  for (int v = 1; v <= size(); ++v)
    if (descs_[v - 1].role == VarRole::Z) out.push_back(v);
  return out;
}

std::string_view mode_name(GeneratorMode mode) {
  switch (mode) {
    case GeneratorMode::Naive:
      return "naive";
    case GeneratorMode::BlockPathwidth:
      return "blockpw";
    case GeneratorMode::NeighborhoodDiversity:
      return "nd";
    case GeneratorMode::None:
      break;
  }
  return "none";
}

std::optional<GeneratorMode> mode_from_name(std::string_view name) {
  if (name == "naive") return GeneratorMode::Naive;
  if (name == "blockpw") return GeneratorMode::BlockPathwidth;
  if (name == "nd") return GeneratorMode::NeighborhoodDiversity;
  return std::nullopt;
}

std::size_t formula_size(const CnfFormula& f) {
  std::size_t total = 0;
  for (const auto& cl : f.clauses) total += cl.size();
  return total;
}

std::vector<Clause> constraint_to_clauses(const ConstraintBlock& block,
                                          std::size_t scope_cap) {
  const std::size_t s = block.scope.size();
  if (s > scope_cap)
    throw ScopeTooLarge("constraint scope has " + std::to_string(s) +
                        " variables, cap is " + std::to_string(scope_cap));
  {
    auto sorted = block.scope;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("constraint scope has duplicate variables");
  }
  std::vector<Clause> clauses;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << s); ++a) {
    if (block.accepts(a)) continue;
    Clause cl;
    cl.reserve(s);
    for (std::size_t t = 0; t < s; ++t)
      cl.push_back(((a >> t) & 1) ? -block.scope[t] : block.scope[t]);
    clauses.push_back(std::move(cl));
  }
  return clauses;
}

bool satisfies(const CnfFormula& f, std::uint64_t assignment) {
  for (const auto& cl : f.clauses) {
    bool sat = false;
    for (int lit : cl) {
      int v = lit > 0 ? lit : -lit;
      bool val = (assignment >> (v - 1)) & 1;
      if ((lit > 0) == val) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

ProjectedAssignments solution_projection(const CnfFormula& f,
                                         const std::vector<int>& vars,
                                         std::size_t cap) {
  const int n = f.vars.size();
  if (n > 24)
    throw CapExceeded("brute-force projection is limited to 24 variables");
  ProjectedAssignments out;
  out.vars = vars;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    if (!satisfies(f, a)) continue;
    std::uint64_t row = 0;
    for (std::size_t t = 0; t < vars.size(); ++t)
      if ((a >> (vars[t] - 1)) & 1) row |= std::uint64_t{1} << t;
    out.rows.push_back(row);
  }
  std::sort(out.rows.begin(), out.rows.end());
  out.rows.erase(std::unique(out.rows.begin(), out.rows.end()), out.rows.end());
  if (out.rows.size() > cap) throw CapExceeded("projection larger than cap");
  return out;
}

std::string write_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  if (f.provenance.mode != GeneratorMode::None) {
    const auto& p = f.provenance;
    out << "c generator " << mode_name(p.mode) << " k=" << p.k << " b=" << p.b
        << " c=" << p.c << " seed=" << p.seed << '\n';
    if (p.matrix) {
      out << "c matrix " << p.matrix->num_rows() << ' ' << p.matrix->num_cols()
          << '\n';
      for (std::size_t i = 0; i < p.matrix->num_rows(); ++i)
        out << "c row " << p.matrix->row(i).to_string() << '\n';
    }
  }
  for (int v = 1; v <= f.vars.size(); ++v) {
    const auto& d = f.vars.descriptor(v);
    if (d.role == VarRole::X)
      out << "c var " << v << " = x " << d.j << '\n';
    else if (d.role == VarRole::Z)
      out << "c var " << v << " = z " << d.i << ' ' << d.j << '\n';
  }
  out << "p cnf " << f.vars.size() << ' ' << f.clauses.size() << '\n';
  for (const auto& cl : f.clauses) {
    for (int lit : cl) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;

  Provenance prov;
  std::vector<std::pair<int, VarDescriptor>> roles;
  std::optional<std::pair<std::size_t, std::size_t>> matrix_dims;
  std::vector<std::string> matrix_rows;
  int num_vars = -1;
  std::size_t num_clauses = 0;
  std::vector<Clause> clauses;
  std::vector<int> current;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == 'c') {
      std::istringstream cs(line);
      std::string c, tag;
      cs >> c >> tag;
      if (tag == "generator") {
        std::string name, kv;
        cs >> name;
        auto mode = mode_from_name(name);
        if (!mode) throw ParseError(lineno, "unknown generator name");
        prov.mode = *mode;
        while (cs >> kv) {
          auto eq = kv.find('=');
          if (eq == std::string::npos) throw ParseError(lineno, "bad generator field");
          std::string key = kv.substr(0, eq);
          long long val = 0;
          try {
            val = std::stoll(kv.substr(eq + 1));
          } catch (const std::exception&) {
            throw ParseError(lineno, "bad generator value");
          }
          if (key == "k")
            prov.k = static_cast<int>(val);
          else if (key == "b")
            prov.b = static_cast<int>(val);
          else if (key == "c")
            prov.c = static_cast<int>(val);
          else if (key == "seed")
            prov.seed = static_cast<std::uint64_t>(val);
          else
            throw ParseError(lineno, "unknown generator field " + key);
        }
      } else if (tag == "matrix") {
        std::size_t m = 0, n = 0;
        if (!(cs >> m >> n)) throw ParseError(lineno, "bad matrix header");
        matrix_dims = {m, n};
      } else if (tag == "row") {
        std::string bits;
        if (!(cs >> bits)) throw ParseError(lineno, "bad matrix row");
        matrix_rows.push_back(bits);
      } else if (tag == "var") {
        int idx = 0;
        std::string eq, role;
        if (!(cs >> idx >> eq >> role) || eq != "=")
          throw ParseError(lineno, "bad var role comment");
        VarDescriptor d;
        if (role == "x") {
          d.role = VarRole::X;
          if (!(cs >> d.j)) throw ParseError(lineno, "bad x role");
        } else if (role == "z") {
          d.role = VarRole::Z;
          if (!(cs >> d.i >> d.j)) throw ParseError(lineno, "bad z role");
        } else {
          throw ParseError(lineno, "unknown var role " + role);
        }
        roles.emplace_back(idx, d);
      }
      // other comments ignored
      continue;
    }
    if (line[0] == 'p') {
      std::istringstream ps(line);
      std::string p, fmt;
      if (!(ps >> p >> fmt >> num_vars >> num_clauses) || fmt != "cnf")
        throw ParseError(lineno, "bad problem line, expected \"p cnf V C\"");
      if (num_vars < 0) throw ParseError(lineno, "negative variable count");
      continue;
    }
    if (num_vars < 0) throw ParseError(lineno, "clause before problem line");
    std::istringstream ls(line);
    int lit = 0;
    while (ls >> lit) {
      if (lit == 0) {
        clauses.push_back(current);
        current.clear();
      } else {
        int v = lit > 0 ? lit : -lit;
        if (v > num_vars) throw ParseError(lineno, "literal out of range");
        for (int other : current)
          if (other == lit || other == -lit)
            throw ParseError(lineno, "variable repeated in clause");
        current.push_back(lit);
      }
    }
  }
  if (!current.empty()) throw ParseError(lineno, "clause not terminated by 0");
  if (num_vars < 0) throw ParseError(lineno ? lineno : 1, "missing problem line");
  if (clauses.size() != num_clauses)
    throw ParseError(lineno, "clause count differs from header");

  CnfFormula f;
  std::vector<VarDescriptor> descs(num_vars);
  for (int v = 0; v < num_vars; ++v) descs[v] = {VarRole::Plain, 0, v + 1};
  for (const auto& [idx, d] : roles) {
    if (idx < 1 || idx > num_vars)
      throw ParseError(lineno, "role comment index out of range");
    descs[idx - 1] = d;
  }
  for (const auto& d : descs) f.vars.add(d);
  f.clauses = std::move(clauses);
  f.provenance = std::move(prov);
  if (matrix_dims) {
    auto [m, n] = *matrix_dims;
    if (matrix_rows.size() != m)
      throw ParseError(lineno, "matrix row count differs from header");
    F2Matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i) {
      if (matrix_rows[i].size() != n)
        throw ParseError(lineno, "matrix row length differs from header");
      for (std::size_t j = 0; j < n; ++j)
        if (matrix_rows[i][j] == '1') a.set(i, j, true);
    }
    f.provenance.matrix = std::move(a);
  }
  return f;
}

}  // namespace kcgen
