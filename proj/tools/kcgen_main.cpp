#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kcgen/compile.hpp"
#include "kcgen/encode.hpp"
#include "kcgen/experiment.hpp"
#include "kcgen/graph.hpp"
#include "kcgen/nnf.hpp"
#include "kcgen/rectcover.hpp"

using namespace kcgen;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// write-temp then rename, so readers never observe partial output
void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content;
  else
    write_file_atomic(path, content);
}

Fraction parse_beta(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) throw Error("beta must be a fraction like 1/3");
  Fraction beta;
  beta.num = std::stol(text.substr(0, slash));
  beta.den = std::stol(text.substr(slash + 1));
  if (beta.num < 0 || beta.den <= 0) throw Error("beta must be nonnegative");
  return beta;
}

struct GenerateArgs {
  std::string mode;
  int k = 1, b = 1, c = 0, n = 0;
  std::uint64_t seed = 0;
  bool have_seed = false;
  std::string matrix_path;
  std::string out_path;
  std::string abstract_path;
  std::size_t cap = 20;
};

int cmd_generate(const GenerateArgs& args) {
  auto mode = mode_from_name(args.mode);
  if (!mode) throw Error("unknown mode " + args.mode);

  F2Matrix a;
  GeneratorParams params{args.k, args.b, args.c, args.seed};
  if (!args.matrix_path.empty()) {
    a = F2Matrix::parse_text(read_file(args.matrix_path));
  } else {
    if (!args.have_seed) throw Error("--seed is required when sampling a matrix");
    int m = args.k * args.b;
    int n = *mode == GeneratorMode::NeighborhoodDiversity ? args.c * args.k * args.b
                                                          : args.n;
    if (n < 1) throw Error("need -n (or -c for nd mode)");
    a = sample_parity_check(m, n, args.seed);
  }

  AbstractInstance inst;
  switch (*mode) {
    case GeneratorMode::Naive:
      inst = abstract_naive(a);
      inst.provenance.k = args.k;
      inst.provenance.b = args.b;
      inst.provenance.seed = args.seed;
      break;
    case GeneratorMode::BlockPathwidth:
      inst = abstract_blocked_pathwidth(a, params);
      break;
    case GeneratorMode::NeighborhoodDiversity:
      inst = abstract_neighborhood_diversity(a, params);
      break;
    case GeneratorMode::None:
      throw Error("unreachable");
  }
  if (!args.abstract_path.empty())
    write_file_atomic(args.abstract_path, write_abstract(inst));

  bool want_cnf = !args.out_path.empty() || args.abstract_path.empty();
  if (want_cnf) {
    CnfFormula f = materialize(inst, args.cap);  // ScopeTooLarge suggests --abstract
    emit(args.out_path, write_dimacs(f));
  }
  return 0;
}

int cmd_analyze(const std::string& in_path, const std::string& out_path,
                const std::string& graph_path, const std::string& decomp_path) {
  CnfFormula f = parse_dimacs(read_file(in_path));
  Graph inc = incidence_graph(f);
  Contraction con = modular_contraction(inc);
  if (!graph_path.empty()) write_file_atomic(graph_path, con.graph.to_text());
  if (!decomp_path.empty()) {
    if (f.provenance.mode != GeneratorMode::BlockPathwidth)
      throw Error("decomposition export needs blockpw generator metadata");
    int n = static_cast<int>(f.vars.x_vars().size());
    write_file_atomic(decomp_path,
                      build_blocked_decomposition(f.provenance.k, n).to_text());
  }

  std::ostringstream out;
  out << "kcgen analyze report v1\n";
  out << "vars: " << f.vars.size() << '\n';
  out << "clauses: " << f.clauses.size() << '\n';
  out << "size: " << formula_size(f) << '\n';
  out << "neighborhood diversity: " << con.classes.diversity() << '\n';
  out << "contracted vertices: " << con.graph.num_vertices() << '\n';
  out << "contracted edges: " << con.graph.num_edges() << '\n';

  bool ok = true;
  if (f.provenance.mode == GeneratorMode::BlockPathwidth) {
    BlockedWidthCheck width = check_blocked_width(f);
    int bound = 2 * f.provenance.k - 1;
    if (width.valid && width.width <= bound) {
      out << "modular pathwidth bound: " << width.width << " (validated)\n";
    } else {
      ok = false;
      out << "modular pathwidth bound: " << bound
          << " (VIOLATED: " << (width.violation.empty() ? "width exceeded" : width.violation)
          << ")\n";
    }
  } else {
    out << "decomposition: n/a\n";
  }
  emit(out_path, out.str());
  return ok ? 0 : 1;
}

int cmd_count(const std::string& in_path, const std::string& policy_name_arg,
              int max_vars, std::size_t max_decisions) {
  CnfFormula f = parse_dimacs(read_file(in_path));
  CompileOptions opts;
  auto policy = policy_from_name(policy_name_arg);
  if (!policy) throw Error("unknown policy " + policy_name_arg);
  opts.policy = *policy;
  opts.budget.max_vars = max_vars;
  opts.budget.max_decisions = max_decisions;
  auto [circuit, stats] = compile_dpll(f, opts);
  std::vector<int> over;
  for (int v = 1; v <= f.vars.size(); ++v) over.push_back(v);
  BigInt models = count_models(circuit, over);
  if (f.provenance.matrix) {
    BigInt oracle = LinearCode(*f.provenance.matrix).affine_model_count();
    bool match = models == oracle;
    std::cout << "models=" << models << " oracle=" << oracle << ' '
              << (match ? "MATCH" : "MISMATCH") << '\n';
    return match ? 0 : 1;
  }
  std::cout << "models=" << models << '\n';
  return 0;
}

int cmd_compile(const std::string& in_path, const std::string& out_path,
                const std::string& policy_name_arg, int max_vars,
                std::size_t max_decisions) {
  CnfFormula f = parse_dimacs(read_file(in_path));
  CompileOptions opts;
  auto policy = policy_from_name(policy_name_arg);
  if (!policy) throw Error("unknown policy " + policy_name_arg);
  opts.policy = *policy;
  opts.budget.max_vars = max_vars;
  opts.budget.max_decisions = max_decisions;
  auto [circuit, stats] = compile_dpll(f, opts);
  emit(out_path, write_nnf(circuit));
  std::cerr << "nodes=" << stats.nodes << " edges=" << stats.edges
            << " decisions=" << stats.decisions << " cache_hits=" << stats.cache_hits
            << " components=" << stats.components_split << '\n';
  return 0;
}

int cmd_check(const std::string& in_path) {
  NnfCircuit c = parse_nnf(read_file(in_path));
  bool ok = true;
  auto and_violations = check_decomposable(c);
  if (and_violations.empty()) {
    std::cout << "decomposable: yes\n";
  } else {
    ok = false;
    std::cout << "decomposable: NO (" << and_violations.size() << " AND nodes)\n";
  }
  if (c.variables().size() <= 20) {
    auto or_violations = check_deterministic(c);
    if (or_violations.empty()) {
      std::cout << "deterministic: yes\n";
    } else {
      ok = false;
      std::cout << "deterministic: NO (" << or_violations.size() << " OR nodes)\n";
    }
  } else {
    std::cout << "deterministic: skipped (more than 20 variables)\n";
  }
  std::cout << "nodes: " << c.num_nodes() << "\nedges: " << c.num_edges() << '\n';
  return ok ? 0 : 1;
}

int cmd_forget(const std::string& in_path, const std::string& out_path,
               const std::vector<int>& vars) {
  NnfCircuit c = parse_nnf(read_file(in_path));
  NnfCircuit g = forget(c, vars);
  emit(out_path, write_nnf(g));
  return 0;
}

int cmd_rectcover(const std::string& table_path, const std::string& beta_text,
                  const std::string& verify_path, std::size_t cap) {
  TruthTable f = TruthTable::parse_text(read_file(table_path));
  Fraction beta = parse_beta(beta_text);
  if (!verify_path.empty()) {
    RectangleCover cover = RectangleCover::parse_text(read_file(verify_path));
    CoverCheck check = verify_cover(f, cover, beta);
    if (check.ok) {
      std::cout << "cover: ok (" << cover.rectangles.size() << " rectangles)\n";
      return 0;
    }
    std::cout << "cover: INVALID (" << check.violation << ")\n";
    return 1;
  }
  std::cout << "min cover: " << min_cover_bruteforce(f, beta, cap) << '\n';
  return 0;
}

int cmd_experiment(const std::string& grid_path, const std::string& out_path,
                   bool timings) {
  ExperimentGrid grid = ExperimentGrid::parse(read_file(grid_path));
  ExperimentReport report = scaling_experiment(grid);
  write_file_atomic(out_path, timings ? report.full_text() : report.body_text());
  bool ok = true;
  for (const auto& row : report.rows)
    if (!row.error.empty() || !row.match) ok = false;
  std::cerr << "report written to " << out_path << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CNF instance generator and knowledge-compilation toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "generate a CNF encoding of a linear code");
  generate->add_option("--mode", gen.mode, "naive | blockpw | nd")->required();
  generate->add_option("-k", gen.k, "row blocks");
  generate->add_option("-b", gen.b, "equations per row block");
  generate->add_option("-c", gen.c, "column-block factor (nd mode)");
  generate->add_option("-n", gen.n, "code length (naive/blockpw)");
  auto* seed_opt = generate->add_option("--seed", gen.seed, "sampling seed");
  generate->add_option("--matrix", gen.matrix_path, "read the parity-check matrix from a file");
  generate->add_option("-o,--output", gen.out_path, "DIMACS output path (default stdout)");
  generate->add_option("--abstract", gen.abstract_path, "abstract-instance output path");
  generate->add_option("--cap", gen.cap, "constraint materialization cap");

  std::string in_path, out_path, policy = "fixed", beta = "1/3", verify_path;
  int max_vars = 64;
  std::size_t max_decisions = std::size_t{1} << 22;
  std::size_t cover_cap = 1u << 20;
  std::vector<int> forget_vars;
  bool timings = false;
  std::string report_path = "report.txt";

  std::string graph_path, decomp_path;
  auto* analyze = app.add_subcommand("analyze", "width report for a DIMACS file");
  analyze->add_option("input", in_path)->required();
  analyze->add_option("-o,--output", out_path, "report path (default stdout)");
  analyze->add_option("--contracted-graph", graph_path, "write the contracted incidence graph");
  analyze->add_option("--decomposition", decomp_path, "write the blocked path decomposition");

  auto* count = app.add_subcommand("count", "model count via compilation, with oracle check");
  count->add_option("input", in_path)->required();
  count->add_option("--policy", policy, "fixed | maxocc");
  count->add_option("--max-vars", max_vars);
  count->add_option("--max-decisions", max_decisions);

  auto* compile = app.add_subcommand("compile", "compile DIMACS to a decision-DNNF file");
  compile->add_option("input", in_path)->required();
  compile->add_option("-o,--output", out_path, "NNF output path (default stdout)");
  compile->add_option("--policy", policy, "fixed | maxocc");
  compile->add_option("--max-vars", max_vars);
  compile->add_option("--max-decisions", max_decisions);

  auto* check = app.add_subcommand("check", "decomposability/determinism of an NNF file");
  check->add_option("input", in_path)->required();

  auto* forget_cmd = app.add_subcommand("forget", "project variables out of an NNF file");
  forget_cmd->add_option("input", in_path)->required();
  forget_cmd->add_option("-o,--output", out_path, "NNF output path (default stdout)");
  forget_cmd->add_option("--vars", forget_vars, "variables to forget")->required();

  auto* rect = app.add_subcommand("rectcover", "rectangle covers of a truth table");
  rect->add_option("input", in_path)->required();
  rect->add_option("--beta", beta, "balance fraction, e.g. 1/3");
  rect->add_option("--verify", verify_path, "verify this cover file instead of searching");
  rect->add_option("--cap", cover_cap, "search cap");

  auto* experiment = app.add_subcommand("experiment", "run a scaling grid and write the report");
  experiment->add_option("grid", in_path)->required();
  experiment->add_option("-o,--output", report_path, "report path");
  experiment->add_flag("--timings", timings, "append the non-reproducible timing section");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      gen.have_seed = seed_opt->count() > 0;
      return cmd_generate(gen);
    }
    if (analyze->parsed()) return cmd_analyze(in_path, out_path, graph_path, decomp_path);
    if (count->parsed()) return cmd_count(in_path, policy, max_vars, max_decisions);
    if (compile->parsed())
      return cmd_compile(in_path, out_path, policy, max_vars, max_decisions);
    if (check->parsed()) return cmd_check(in_path);
    if (forget_cmd->parsed()) return cmd_forget(in_path, out_path, forget_vars);
    if (rect->parsed()) return cmd_rectcover(in_path, beta, verify_path, cover_cap);
    if (experiment->parsed()) return cmd_experiment(in_path, report_path, timings);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
