#include "kcgen/nnf.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace kcgen {

int NnfCircuit::add_literal(int lit) {
  if (lit == 0) throw Error("literal must be nonzero");
  Node n;
  n.kind = Kind::Literal;
  n.literal = lit;
  nodes_.push_back(std::move(n));
  return num_nodes() - 1;
}

int NnfCircuit::add_and(std::vector<int> children) {
  for (int c : children)
    if (c < 0 || c >= num_nodes()) throw Error("AND child out of range");
  Node n;
  n.kind = Kind::And;
  n.children = std::move(children);
  num_edges_ += n.children.size();
  nodes_.push_back(std::move(n));
  return num_nodes() - 1;
}

int NnfCircuit::add_or(std::vector<int> children, int decision_var) {
  for (int c : children)
    if (c < 0 || c >= num_nodes()) throw Error("OR child out of range");
  Node n;
  n.kind = Kind::Or;
  n.decision_var = decision_var;
  n.children = std::move(children);
  num_edges_ += n.children.size();
  nodes_.push_back(std::move(n));
  return num_nodes() - 1;
}

std::vector<int> NnfCircuit::variables() const {
  std::vector<int> vars;
  for (const auto& n : nodes_)
    if (n.kind == Kind::Literal) vars.push_back(n.literal > 0 ? n.literal : -n.literal);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

bool Assignment::covers(int var) const {
  return std::binary_search(scope.begin(), scope.end(), var);
}

bool Assignment::value(int var) const {
  auto it = std::lower_bound(scope.begin(), scope.end(), var);
  if (it == scope.end() || *it != var) throw IncompleteAssignment("variable not in scope");
  return (bits >> (it - scope.begin())) & 1;
}

std::string write_nnf(const NnfCircuit& c) {
  std::ostringstream out;
  out << "nnf " << c.num_nodes() << ' ' << c.num_edges() << ' '
      << (c.variables().empty() ? 0 : c.variables().back()) << '\n';
  for (int id = 0; id < c.num_nodes(); ++id) {
    const auto& n = c.node(id);
    switch (n.kind) {
      case NnfCircuit::Kind::Literal:
        out << "L " << n.literal << '\n';
        break;
      case NnfCircuit::Kind::And:
        out << "A " << n.children.size();
        for (int ch : n.children) out << ' ' << ch;
        out << '\n';
        break;
      case NnfCircuit::Kind::Or:
        out << "O " << n.decision_var << ' ' << n.children.size();
        for (int ch : n.children) out << ' ' << ch;
        out << '\n';
        break;
    }
  }
  return out.str();
}

NnfCircuit parse_nnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  NnfCircuit c;
  long declared_nodes = -1, declared_edges = -1, declared_vars = -1;
  std::vector<bool> has_parent;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "nnf") {
      if (declared_nodes >= 0) throw ParseError(lineno, "duplicate header");
      if (!(ls >> declared_nodes >> declared_edges >> declared_vars))
        throw ParseError(lineno, "bad nnf header");
      continue;
    }
    if (declared_nodes < 0) throw ParseError(lineno, "node line before header");
    auto read_children = [&](std::size_t count) {
      std::vector<int> children;
      for (std::size_t t = 0; t < count; ++t) {
        int id = 0;
        if (!(ls >> id)) throw ParseError(lineno, "missing child id");
        if (id < 0 || id >= c.num_nodes())
          throw ParseError(lineno, "node references a later or invalid line");
        children.push_back(id);
      }
      return children;
    };
    if (tag == "L") {
      int lit = 0;
      if (!(ls >> lit) || lit == 0) throw ParseError(lineno, "bad literal line");
      c.add_literal(lit);
      has_parent.push_back(false);
    } else if (tag == "A") {
      std::size_t count = 0;
      if (!(ls >> count)) throw ParseError(lineno, "bad AND line");
      auto children = read_children(count);
      for (int ch : children) has_parent[ch] = true;
      c.add_and(std::move(children));
      has_parent.push_back(false);
    } else if (tag == "O") {
      int dvar = 0;
      std::size_t count = 0;
      if (!(ls >> dvar >> count)) throw ParseError(lineno, "bad OR line");
      auto children = read_children(count);
      for (int ch : children) has_parent[ch] = true;
      c.add_or(std::move(children), dvar);
      has_parent.push_back(false);
    } else {
      throw ParseError(lineno, "unknown node tag " + tag);
    }
  }
  if (declared_nodes < 0) throw ParseError(1, "missing nnf header");
  if (c.num_nodes() != declared_nodes)
    throw ParseError(lineno, "node count differs from header");
  if (static_cast<long>(c.num_edges()) != declared_edges)
    throw ParseError(lineno, "edge count differs from header");
  if (c.num_nodes() == 0) throw ParseError(lineno, "circuit has no nodes");
  for (int id = 0; id + 1 < c.num_nodes(); ++id)
    if (!has_parent[id])
      throw MultipleSinks("node " + std::to_string(id) + " is a second sink");
  return c;
}

namespace {

// Per-node variable sets as fixed-width bit rows over var(c).
class VarSets {
 public:
  explicit VarSets(const NnfCircuit& c) : vars_(c.variables()) {
    words_ = (vars_.size() + 63) / 64;
    rows_.assign(static_cast<std::size_t>(c.num_nodes()) * words_, 0);
    for (int id = 0; id < c.num_nodes(); ++id) {
      const auto& n = c.node(id);
      if (n.kind == NnfCircuit::Kind::Literal) {
        int v = n.literal > 0 ? n.literal : -n.literal;
        std::size_t pos = std::lower_bound(vars_.begin(), vars_.end(), v) - vars_.begin();
        row(id)[pos >> 6] |= std::uint64_t{1} << (pos & 63);
      } else {
        for (int ch : n.children)
          for (std::size_t w = 0; w < words_; ++w) row(id)[w] |= row(ch)[w];
      }
    }
  }

  std::uint64_t* row(int id) { return rows_.data() + static_cast<std::size_t>(id) * words_; }
  const std::uint64_t* row(int id) const {
    return rows_.data() + static_cast<std::size_t>(id) * words_;
  }
  std::size_t words() const { return words_; }

  bool intersects(int a, int b) const {
    for (std::size_t w = 0; w < words_; ++w)
      if (row(a)[w] & row(b)[w]) return true;
    return false;
  }

  std::size_t count(int id) const {
    std::size_t total = 0;
    for (std::size_t w = 0; w < words_; ++w) total += std::popcount(row(id)[w]);
    return total;
  }

 private:
  std::vector<int> vars_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

}  // namespace

std::vector<int> check_decomposable(const NnfCircuit& c) {
  VarSets sets(c);
  std::vector<int> violations;
  for (int id = 0; id < c.num_nodes(); ++id) {
    const auto& n = c.node(id);
    if (n.kind != NnfCircuit::Kind::And || n.children.size() < 2) continue;
    bool bad = false;
    for (std::size_t i = 0; i < n.children.size() && !bad; ++i)
      for (std::size_t j = i + 1; j < n.children.size() && !bad; ++j)
        if (sets.intersects(n.children[i], n.children[j])) bad = true;
    if (bad) violations.push_back(id);
  }
  return violations;
}

namespace {

// One bottom-up pass computing every node's value under the assignment.
void evaluate_all(const NnfCircuit& c, const Assignment& a, std::vector<char>& val) {
  val.resize(c.num_nodes());
  for (int id = 0; id < c.num_nodes(); ++id) {
    const auto& n = c.node(id);
    switch (n.kind) {
      case NnfCircuit::Kind::Literal: {
        int v = n.literal > 0 ? n.literal : -n.literal;
        bool bit = a.value(v);
        val[id] = (n.literal > 0) == bit;
        break;
      }
      case NnfCircuit::Kind::And: {
        char m = 1;
        for (int ch : n.children) m = std::min(m, val[ch]);
        val[id] = m;
        break;
      }
      case NnfCircuit::Kind::Or: {
        char m = 0;
        for (int ch : n.children) m = std::max(m, val[ch]);
        val[id] = m;
        break;
      }
    }
  }
}

}  // namespace

std::vector<int> check_deterministic(const NnfCircuit& c) {
  auto vars = c.variables();
  if (vars.size() > 20) throw TooLarge("determinism check is limited to 20 variables");
  std::vector<char> violating(c.num_nodes(), 0);
  Assignment a;
  a.scope = vars;
  std::vector<char> val;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars.size()); ++bits) {
    a.bits = bits;
    evaluate_all(c, a, val);
    for (int id = 0; id < c.num_nodes(); ++id) {
      const auto& n = c.node(id);
      if (n.kind != NnfCircuit::Kind::Or || n.children.size() < 2 || violating[id]) continue;
      int sat = 0;
      for (int ch : n.children)
        if (val[ch] && ++sat > 1) break;
      if (sat > 1) violating[id] = 1;
    }
  }
  std::vector<int> out;
  for (int id = 0; id < c.num_nodes(); ++id)
    if (violating[id]) out.push_back(id);
  return out;
}

bool evaluate(const NnfCircuit& c, const Assignment& a) {
  for (int v : c.variables())
    if (!a.covers(v)) throw IncompleteAssignment("assignment misses a circuit variable");
  std::vector<char> val;
  evaluate_all(c, a, val);
  return val[c.sink()];
}

NnfCircuit forget(const NnfCircuit& c, const std::vector<int>& vars) {
  if (!check_decomposable(c).empty())
    throw NotDecomposable("forgetting requires a decomposable circuit");
  std::vector<int> sorted = vars;
  std::sort(sorted.begin(), sorted.end());

  // Literals of forgotten variables become the constant-1 node (empty AND);
  // everything else is copied as-is, then unreachable nodes are swept.
  std::vector<char> keep(c.num_nodes(), 0);
  keep[c.sink()] = 1;
  for (int id = c.num_nodes() - 1; id >= 0; --id) {
    if (!keep[id]) continue;
    for (int ch : c.node(id).children) keep[ch] = 1;
  }
  NnfCircuit out;
  std::vector<int> remap(c.num_nodes(), -1);
  for (int id = 0; id < c.num_nodes(); ++id) {
    if (!keep[id]) continue;
    const auto& n = c.node(id);
    if (n.kind == NnfCircuit::Kind::Literal) {
      int v = n.literal > 0 ? n.literal : -n.literal;
      if (std::binary_search(sorted.begin(), sorted.end(), v))
        remap[id] = out.add_true();
      else
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
  return out;
}

BigInt count_models(const NnfCircuit& c, const std::vector<int>& over) {
  if (!check_decomposable(c).empty())
    throw NotDecomposable("model counting requires a decomposable circuit");
  auto vars = c.variables();
  for (int v : vars)
    if (!std::binary_search(over.begin(), over.end(), v))
      throw Error("count scope must contain all circuit variables");
  if (vars.size() <= 16 && !check_deterministic(c).empty())
    throw NotDeterministic("model counting requires a deterministic circuit");

  VarSets sets(c);
  std::vector<BigInt> count(c.num_nodes());
  for (int id = 0; id < c.num_nodes(); ++id) {
    const auto& n = c.node(id);
    switch (n.kind) {
      case NnfCircuit::Kind::Literal:
        count[id] = 1;
        break;
      case NnfCircuit::Kind::And: {
        BigInt prod = 1;
        for (int ch : n.children) prod *= count[ch];
        count[id] = prod;
        break;
      }
      case NnfCircuit::Kind::Or: {
        BigInt sum = 0;
        std::size_t own = sets.count(id);
        for (int ch : n.children)
          sum += count[ch] * pow2(own - sets.count(ch));
        count[id] = sum;
        break;
      }
    }
  }
  return count[c.sink()] * pow2(over.size() - sets.count(c.sink()));
}

}  // namespace kcgen
