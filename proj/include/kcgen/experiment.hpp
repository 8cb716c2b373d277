#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kcgen/cnf.hpp"
#include "kcgen/compile.hpp"
#include "kcgen/encode.hpp"

namespace kcgen {

struct ExperimentCell {
  GeneratorMode mode = GeneratorMode::BlockPathwidth;
  GeneratorParams params;
  int n = 0;  // columns; derived as c*k*b in nd mode
};

/// Grid of generator cells plus shared run options. Parsed from a
/// key-value table: one "key = values..." per line, '#' comments.
/// Keys: mode, k, b, n, c, seed (value lists), policy, scope_cap,
/// max_decisions (single values). Cells are the cartesian product in
/// mode-major, then k, b, n|c, seed order.
struct ExperimentGrid {
  std::vector<ExperimentCell> cells;
  BranchPolicy policy = BranchPolicy::FixedOrder;
  std::size_t scope_cap = 20;
  CompileBudget budget;

  static ExperimentGrid parse(std::string_view text);
};

struct ExperimentRow {
  ExperimentCell cell;
  std::string error;  // empty on success
  std::size_t vars = 0;
  std::size_t clauses = 0;
  std::size_t size = 0;
  std::size_t nd = 0;
  std::string width_check;  // blockpw: decomposition validation; otherwise "-"
  std::size_t nodes = 0;
  std::size_t edges = 0;
  BigInt models = 0;
  BigInt oracle = 0;
  bool match = false;
  double wall_ms = 0.0;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;

  /// Deterministic part: header + one row per cell, no timing.
  std::string body_text() const;
  /// Body followed by the informational timing section.
  std::string full_text() const;
};

/// Generates, compiles, verifies and measures every cell in grid order.
/// Cell-level failures are recorded in the row; other cells continue.
ExperimentReport scaling_experiment(const ExperimentGrid& grid);

}  // namespace kcgen
