#include "kcgen/experiment.hpp"

#include <chrono>
#include <sstream>

#include "kcgen/graph.hpp"
#include "kcgen/nnf.hpp"

namespace kcgen {

ExperimentGrid ExperimentGrid::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;

  std::vector<GeneratorMode> modes;
  std::vector<int> ks, bs, ns, cs;
  std::vector<std::uint64_t> seeds;
  ExperimentGrid grid;

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key = values");
    std::istringstream ks_in(line.substr(0, eq));
    std::string key;
    ks_in >> key;
    std::istringstream vs(line.substr(eq + 1));
    if (key == "mode") {
      std::string name;
      while (vs >> name) {
        auto m = mode_from_name(name);
        if (!m) throw ParseError(lineno, "unknown mode " + name);
        modes.push_back(*m);
      }
    } else if (key == "k" || key == "b" || key == "n" || key == "c") {
      int v;
      auto& dst = key == "k" ? ks : key == "b" ? bs : key == "n" ? ns : cs;
      while (vs >> v) dst.push_back(v);
    } else if (key == "seed") {
      std::uint64_t v;
      while (vs >> v) seeds.push_back(v);
    } else if (key == "policy") {
      std::string name;
      if (!(vs >> name)) throw ParseError(lineno, "missing policy value");
      auto p = policy_from_name(name);
      if (!p) throw ParseError(lineno, "unknown policy " + name);
      grid.policy = *p;
    } else if (key == "scope_cap") {
      if (!(vs >> grid.scope_cap)) throw ParseError(lineno, "bad scope_cap");
    } else if (key == "max_decisions") {
      if (!(vs >> grid.budget.max_decisions)) throw ParseError(lineno, "bad max_decisions");
    } else if (key == "max_vars") {
      if (!(vs >> grid.budget.max_vars)) throw ParseError(lineno, "bad max_vars");
    } else {
      throw ParseError(lineno, "unknown key " + key);
    }
  }
  if (modes.empty()) throw ParseError(lineno ? lineno : 1, "grid needs at least one mode");
  if (ks.empty()) ks.push_back(1);
  if (bs.empty()) bs.push_back(1);
  if (seeds.empty()) throw ParseError(lineno ? lineno : 1, "grid needs explicit seeds");

  for (auto mode : modes) {
    const bool uses_c = mode == GeneratorMode::NeighborhoodDiversity;
    const auto& third = uses_c ? cs : ns;
    if (third.empty())
      throw ParseError(lineno, uses_c ? "nd mode needs c values" : "mode needs n values");
    for (int k : ks)
      for (int b : bs)
        for (int t : third)
          for (auto seed : seeds) {
            ExperimentCell cell;
            cell.mode = mode;
            cell.params = {k, b, uses_c ? t : 0, seed};
            cell.n = uses_c ? t * k * b : t;
            grid.cells.push_back(cell);
          }
  }
  return grid;
}

namespace {

ExperimentRow run_cell(const ExperimentCell& cell, const ExperimentGrid& grid) {
  ExperimentRow row;
  row.cell = cell;
  auto start = std::chrono::steady_clock::now();
  try {
    const int m = cell.params.k * cell.params.b;
    F2Matrix a = sample_parity_check(m, cell.n, cell.params.seed);
    CnfFormula f;
    switch (cell.mode) {
      case GeneratorMode::Naive: {
        auto inst = abstract_naive(a);
        inst.provenance.k = cell.params.k;
        inst.provenance.b = cell.params.b;
        inst.provenance.seed = cell.params.seed;
        f = materialize(inst, grid.scope_cap);
        break;
      }
      case GeneratorMode::BlockPathwidth:
        f = encode_blocked_pathwidth(a, cell.params, grid.scope_cap);
        break;
      case GeneratorMode::NeighborhoodDiversity:
        f = encode_neighborhood_diversity(a, cell.params, grid.scope_cap);
        break;
      case GeneratorMode::None:
        throw Error("cell without generator mode");
    }
    row.vars = static_cast<std::size_t>(f.vars.size());
    row.clauses = f.clauses.size();
    row.size = formula_size(f);
    row.nd = neighborhood_partition(incidence_graph(f)).diversity();
    if (cell.mode == GeneratorMode::BlockPathwidth) {
      auto width = check_blocked_width(f);
      row.width_check = width.valid ? "ok:" + std::to_string(width.width) : "FAIL";
    } else {
      row.width_check = "-";
    }

    CompileOptions opts;
    opts.policy = grid.policy;
    opts.budget = grid.budget;
    auto [circuit, stats] = compile_dpll(f, opts);
    if (!check_decomposable(circuit).empty())
      throw Error("compiled circuit is not decomposable");
    if (circuit.variables().size() <= 16 && !check_deterministic(circuit).empty())
      throw Error("compiled circuit is not deterministic");
    row.nodes = static_cast<std::size_t>(stats.nodes);
    row.edges = stats.edges;
    std::vector<int> over;
    for (int v = 1; v <= f.vars.size(); ++v) over.push_back(v);
    row.models = count_models(circuit, over);
    row.oracle = LinearCode(a).affine_model_count();
    row.match = row.models == row.oracle;
  } catch (const Error& e) {
    row.error = e.what();
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return row;
}

}  // namespace

ExperimentReport scaling_experiment(const ExperimentGrid& grid) {
  ExperimentReport report;
  report.rows.reserve(grid.cells.size());
  for (const auto& cell : grid.cells) report.rows.push_back(run_cell(cell, grid));
  return report;
}

std::string ExperimentReport::body_text() const {
  std::ostringstream out;
  out << "kcgen experiment report v1\n";
  out << "columns: mode k b c n seed vars clauses size nd width nodes edges"
         " models oracle match\n";
  for (const auto& row : rows) {
    out << "row " << mode_name(row.cell.mode) << ' ' << row.cell.params.k << ' '
        << row.cell.params.b << ' ' << row.cell.params.c << ' ' << row.cell.n
        << ' ' << row.cell.params.seed;
    if (!row.error.empty()) {
      out << " error " << row.error << '\n';
      continue;
    }
    out << ' ' << row.vars << ' ' << row.clauses << ' ' << row.size << ' '
        << row.nd << ' ' << row.width_check << ' ' << row.nodes << ' '
        << row.edges << ' ' << row.models << ' ' << row.oracle << ' '
        << (row.match ? "ok" : "MISMATCH") << '\n';
  }
  return out.str();
}

std::string ExperimentReport::full_text() const {
  std::ostringstream out;
  out << body_text();
  out << "timing: informational, not reproducible\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    out << "cell " << i << ": " << static_cast<long long>(rows[i].wall_ms + 0.5)
        << " ms\n";
  return out.str();
}

}  // namespace kcgen
