#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "kcgen/cnf.hpp"
#include "kcgen/nnf.hpp"

namespace kcgen {

enum class BranchPolicy : std::uint8_t { FixedOrder, MaxOccurrence };

std::string_view policy_name(BranchPolicy p);
std::optional<BranchPolicy> policy_from_name(std::string_view name);

struct CompileBudget {
  int max_vars = 64;
  std::size_t max_decisions = std::size_t{1} << 22;
};

struct CompileStats {
  int nodes = 0;
  std::size_t edges = 0;
  std::size_t cache_hits = 0;
  std::size_t components_split = 0;
  std::size_t decisions = 0;
  double wall_ms = 0.0;
};

struct CompileOptions {
  BranchPolicy policy = BranchPolicy::FixedOrder;
  bool use_cache = true;
  CompileBudget budget;
};

/// Exhaustive DPLL compilation to decision-DNNF. Decisions become an OR of
/// two ANDs over complementary literals, connected components of the
/// residual formula become AND children, and identical residuals are shared
/// through the cache. Throws BudgetExceeded when the variable count or the
/// decision budget is exceeded (no circuit emitted).
std::pair<NnfCircuit, CompileStats> compile_dpll(const CnfFormula& f,
                                                 const CompileOptions& opts = {});

}  // namespace kcgen
