#include "kcgen/compile.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <unordered_map>

namespace kcgen {

std::string_view policy_name(BranchPolicy p) {
  return p == BranchPolicy::FixedOrder ? "fixed" : "maxocc";
}

std::optional<BranchPolicy> policy_from_name(std::string_view name) {
  if (name == "fixed") return BranchPolicy::FixedOrder;
  if (name == "maxocc") return BranchPolicy::MaxOccurrence;
  return std::nullopt;
}

namespace {

using Residual = std::vector<std::vector<int>>;

// Sorted clause list with sorted literals and duplicates removed; this is
// both the cache key and the canonical branching view.
void canonicalize(Residual& r) {
  for (auto& cl : r) std::sort(cl.begin(), cl.end());
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
}

std::string cache_key(const Residual& r) {
  std::string key;
  std::size_t total = 0;
  for (const auto& cl : r) total += cl.size() + 1;
  key.reserve(total * sizeof(int));
  auto push = [&key](int v) {
    key.append(reinterpret_cast<const char*>(&v), sizeof(int));
  };
  for (const auto& cl : r) {
    for (int lit : cl) push(lit);
    push(0);
  }
  return key;
}

Residual condition(const Residual& r, int lit) {
  Residual out;
  out.reserve(r.size());
  for (const auto& cl : r) {
    bool satisfied = false;
    for (int l : cl)
      if (l == lit) {
        satisfied = true;
        break;
      }
    if (satisfied) continue;
    std::vector<int> reduced;
    reduced.reserve(cl.size());
    for (int l : cl)
      if (l != -lit) reduced.push_back(l);
    out.push_back(std::move(reduced));
  }
  return out;
}

class Compiler {
 public:
  Compiler(const CompileOptions& opts) : opts_(opts) {
    false_node_ = circuit_.add_false();
    true_node_ = circuit_.add_true();
  }

  int run(Residual r) {
    canonicalize(r);
    return compile(std::move(r));
  }

  NnfCircuit finish(int root, CompileStats& stats) {
    // Extract the sub-DAG reachable from the root; shared literal/constant
    // nodes created eagerly may be unreachable and must not survive.
    std::vector<char> keep(circuit_.num_nodes(), 0);
    keep[root] = 1;
    for (int id = circuit_.num_nodes() - 1; id >= 0; --id) {
      if (!keep[id]) continue;
      for (int ch : circuit_.node(id).children) keep[ch] = 1;
    }
    NnfCircuit out;
    std::vector<int> remap(circuit_.num_nodes(), -1);
    for (int id = 0; id < circuit_.num_nodes(); ++id) {
      if (!keep[id]) continue;
      const auto& n = circuit_.node(id);
      if (n.kind == NnfCircuit::Kind::Literal) {
        remap[id] = out.add_literal(n.literal);
      } else {
        std::vector<int> children;
        children.reserve(n.children.size());
        for (int ch : n.children) children.push_back(remap[ch]);
        if (n.kind == NnfCircuit::Kind::And)
          remap[id] = out.add_and(std::move(children));
        else
          remap[id] = out.add_or(std::move(children), n.decision_var);
      }
    }
    stats.nodes = out.num_nodes();
    stats.edges = out.num_edges();
    stats.cache_hits = cache_hits_;
    stats.components_split = components_split_;
    stats.decisions = decisions_;
    return out;
  }

 private:
  int literal_node(int lit) {
    auto [it, fresh] = literal_nodes_.try_emplace(lit, -1);
    if (fresh) it->second = circuit_.add_literal(lit);
    return it->second;
  }

  int compile(Residual r) {
    if (r.empty()) return true_node_;
    for (const auto& cl : r)
      if (cl.empty()) return false_node_;

    std::string key;
    if (opts_.use_cache) {
      key = cache_key(r);
      auto it = cache_.find(key);
      if (it != cache_.end()) {
        ++cache_hits_;
        return it->second;
      }
    }

    int result = -1;
    auto components = split_components(r);
    if (components.size() > 1) {
      ++components_split_;
      std::vector<int> children;
      children.reserve(components.size());
      for (auto& comp : components) children.push_back(compile(std::move(comp)));
      result = circuit_.add_and(std::move(children));
    } else {
      int var = pick_variable(r);
      if (++decisions_ > opts_.budget.max_decisions)
        throw BudgetExceeded("decision budget exceeded");
      Residual neg = condition(r, -var);
      Residual pos = condition(r, var);
      canonicalize(neg);
      canonicalize(pos);
      int lo = circuit_.add_and({literal_node(-var), compile(std::move(neg))});
      int hi = circuit_.add_and({literal_node(var), compile(std::move(pos))});
      result = circuit_.add_or({lo, hi}, var);
    }
    if (opts_.use_cache) cache_.emplace(std::move(key), result);
    return result;
  }

  // Connected components of the variable-sharing relation, each returned as
  // its clause subset, ordered by smallest variable.
  std::vector<Residual> split_components(const Residual& r) {
    std::map<int, int> var_root;  // variable -> component id (union-find)
    std::vector<int> parent(r.size());
    for (std::size_t c = 0; c < r.size(); ++c) parent[c] = static_cast<int>(c);
    std::function<int(int)> find = [&](int c) {
      while (parent[c] != c) c = parent[c] = parent[parent[c]];
      return c;
    };
    for (std::size_t c = 0; c < r.size(); ++c) {
      for (int lit : r[c]) {
        int v = lit > 0 ? lit : -lit;
        auto [it, fresh] = var_root.try_emplace(v, static_cast<int>(c));
        if (!fresh) {
          int a = find(it->second), b = find(static_cast<int>(c));
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      }
    }
    std::map<int, Residual> by_root;
    for (std::size_t c = 0; c < r.size(); ++c) by_root[find(static_cast<int>(c))].push_back(r[c]);
    std::vector<Residual> out;
    out.reserve(by_root.size());
    for (auto& [root, clauses] : by_root) out.push_back(std::move(clauses));
    return out;
  }

  int pick_variable(const Residual& r) {
    // Unit clauses first: a forced branch keeps one side trivially false.
    for (const auto& cl : r)
      if (cl.size() == 1) return cl[0] > 0 ? cl[0] : -cl[0];
    if (opts_.policy == BranchPolicy::FixedOrder) {
      int best = 0;
      for (const auto& cl : r)
        for (int lit : cl) {
          int v = lit > 0 ? lit : -lit;
          if (best == 0 || v < best) best = v;
        }
      return best;
    }
    std::map<int, int> occurrences;
    for (const auto& cl : r)
      for (int lit : cl) ++occurrences[lit > 0 ? lit : -lit];
    int best = 0, best_count = -1;
    for (auto [v, count] : occurrences)
      if (count > best_count) best = v, best_count = count;
    return best;
  }

  CompileOptions opts_;
  NnfCircuit circuit_;
  int false_node_;
  int true_node_;
  std::unordered_map<int, int> literal_nodes_;
  std::unordered_map<std::string, int> cache_;
  std::size_t cache_hits_ = 0;
  std::size_t components_split_ = 0;
  std::size_t decisions_ = 0;
};

}  // namespace

std::pair<NnfCircuit, CompileStats> compile_dpll(const CnfFormula& f,
                                                 const CompileOptions& opts) {
  if (f.vars.size() > opts.budget.max_vars)
    throw BudgetExceeded("formula has " + std::to_string(f.vars.size()) +
                         " variables, budget is " + std::to_string(opts.budget.max_vars));
  auto start = std::chrono::steady_clock::now();
  Compiler compiler(opts);
  Residual r(f.clauses.begin(), f.clauses.end());
  int root = compiler.run(std::move(r));
  CompileStats stats;
  NnfCircuit circuit = compiler.finish(root, stats);
  stats.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return {std::move(circuit), stats};
}

}  // namespace kcgen
