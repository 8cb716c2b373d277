#include "kcgen/graph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace kcgen {

std::string VertexLabel::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::X:
      out << "x " << a;
      break;
    case Kind::Z:
      out << "z " << a << ' ' << b;
      break;
    case Kind::PlainVar:
      out << "v " << a;
      break;
    case Kind::Clause:
      out << "c " << a;
      break;
    case Kind::S:
      out << "s " << a << ' ' << b;
      break;
    case Kind::R:
      out << "r " << a << ' ' << b;
      break;
  }
  return out.str();
}

VertexLabel VertexLabel::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tag;
  VertexLabel l;
  if (!(in >> tag) || tag.size() != 1) throw Error("bad vertex label: " + std::string(text));
  switch (tag[0]) {
    case 'x':
      l.kind = Kind::X;
      if (!(in >> l.a)) throw Error("bad x label");
      break;
    case 'z':
      l.kind = Kind::Z;
      if (!(in >> l.a >> l.b)) throw Error("bad z label");
      break;
    case 'v':
      l.kind = Kind::PlainVar;
      if (!(in >> l.a)) throw Error("bad v label");
      break;
    case 'c':
      l.kind = Kind::Clause;
      if (!(in >> l.a)) throw Error("bad c label");
      break;
    case 's':
      l.kind = Kind::S;
      if (!(in >> l.a >> l.b)) throw Error("bad s label");
      break;
    case 'r':
      l.kind = Kind::R;
      if (!(in >> l.a >> l.b)) throw Error("bad r label");
      break;
    default:
      throw Error("bad vertex label: " + std::string(text));
  }
  return l;
}

int Graph::add_vertex(VertexLabel label) {
  labels_.push_back(label);
  adj_.emplace_back();
  return num_vertices() - 1;
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw Error("self-loops are not allowed");
  if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
    throw Error("edge endpoint out of range");
  auto insert = [](std::vector<int>& list, int w) {
    auto pos = std::lower_bound(list.begin(), list.end(), w);
    if (pos != list.end() && *pos == w) return false;
    list.insert(pos, w);
    return true;
  };
  if (insert(adj_[u], v)) {
    insert(adj_[v], u);
    ++num_edges_;
  }
}

bool Graph::has_edge(int u, int v) const {
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::optional<int> Graph::find_vertex(const VertexLabel& label) const {
  for (int v = 0; v < num_vertices(); ++v)
    if (labels_[v] == label) return v;
  return std::nullopt;
}

std::string Graph::to_text() const {
  std::ostringstream out;
  out << "graph " << num_vertices() << '\n';
  for (int v = 0; v < num_vertices(); ++v)
    out << "vertex " << v << ' ' << labels_[v].to_string() << '\n';
  for (int v = 0; v < num_vertices(); ++v) {
    out << "adj " << v << " :";
    for (int u : adj_[v]) out << ' ' << u;
    out << '\n';
  }
  return out.str();
}

Graph Graph::parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  Graph g;
  int declared = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "graph") {
      if (!(ls >> declared) || declared < 0) throw ParseError(lineno, "bad graph header");
    } else if (tag == "vertex") {
      int id = 0;
      if (!(ls >> id)) throw ParseError(lineno, "bad vertex line");
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      try {
        if (g.add_vertex(VertexLabel::parse(rest)) != id)
          throw Error("vertex ids must be consecutive from 0");
      } catch (const Error& e) {
        throw ParseError(lineno, e.what());
      }
    } else if (tag == "adj") {
      int v = 0;
      std::string colon;
      if (!(ls >> v >> colon) || colon != ":") throw ParseError(lineno, "bad adj line");
      if (v < 0 || v >= g.num_vertices()) throw ParseError(lineno, "adj vertex out of range");
      int u = 0;
      while (ls >> u) {
        try {
          g.add_edge(v, u);
        } catch (const Error& e) {
          throw ParseError(lineno, e.what());
        }
      }
    } else {
      throw ParseError(lineno, "unknown line tag " + tag);
    }
  }
  if (declared < 0) throw ParseError(1, "missing graph header");
  if (declared != g.num_vertices())
    throw ParseError(lineno, "vertex count differs from header");
  return g;
}

Graph incidence_graph(const CnfFormula& f) {
  Graph g;
  for (int v = 1; v <= f.vars.size(); ++v) {
    const auto& d = f.vars.descriptor(v);
    if (d.role == VarRole::X)
      g.add_vertex(x_label(d.j));
    else if (d.role == VarRole::Z)
      g.add_vertex(z_label(d.i, d.j));
    else
      g.add_vertex(plain_label(d.j));
  }
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    int cv = g.add_vertex(clause_label(static_cast<int>(c)));
    for (int lit : f.clauses[c]) g.add_edge(cv, (lit > 0 ? lit : -lit) - 1);
  }
  return g;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

NeighborhoodPartition neighborhood_partition(const Graph& g) {
  const int n = g.num_vertices();
  UnionFind uf(n);

  // Same open neighborhood (non-adjacent twins).
  {
    std::map<std::vector<int>, int> groups;
    for (int v = 0; v < n; ++v) {
      auto [it, fresh] = groups.try_emplace(g.neighbors(v), v);
      if (!fresh) uf.unite(it->second, v);
    }
  }
  // Same closed neighborhood (adjacent twins).
  {
    std::map<std::vector<int>, int> groups;
    for (int v = 0; v < n; ++v) {
      std::vector<int> closed = g.neighbors(v);
      closed.insert(std::lower_bound(closed.begin(), closed.end(), v), v);
      auto [it, fresh] = groups.try_emplace(std::move(closed), v);
      if (!fresh) uf.unite(it->second, v);
    }
  }

  std::vector<std::vector<int>> by_root(n);
  for (int v = 0; v < n; ++v) by_root[uf.find(v)].push_back(v);
  NeighborhoodPartition part;
  for (int v = 0; v < n; ++v)
    if (!by_root[v].empty()) part.classes.push_back(std::move(by_root[v]));
  return part;
}

Contraction modular_contraction(const Graph& g) {
  Contraction con;
  con.classes = neighborhood_partition(g);
  const int n = g.num_vertices();
  std::vector<int> rep_of(n, -1);
  std::vector<int> new_id(n, -1);
  for (const auto& cls : con.classes.classes)
    for (int v : cls) rep_of[v] = cls.front();

  std::vector<int> reps;
  for (const auto& cls : con.classes.classes) reps.push_back(cls.front());
  std::sort(reps.begin(), reps.end());
  for (int r : reps) {
    new_id[r] = con.graph.add_vertex(g.label(r));
  }
  con.vertex_map.assign(n, -1);
  for (int v = 0; v < n; ++v) con.vertex_map[v] = new_id[rep_of[v]];

  for (int r : reps)
    for (int u : g.neighbors(r))
      if (rep_of[u] == u) con.graph.add_edge(new_id[r], new_id[u]);
  return con;
}

int PathDecomposition::width() const {
  int w = -1;
  for (const auto& bag : bags) {
    auto copy = bag;
    std::sort(copy.begin(), copy.end());
    copy.erase(std::unique(copy.begin(), copy.end()), copy.end());
    w = std::max(w, static_cast<int>(copy.size()) - 1);
  }
  return w;
}

std::string PathDecomposition::to_text() const {
  std::ostringstream out;
  out << "pathdecomp " << bags.size() << '\n';
  for (const auto& bag : bags) {
    out << "bag ";
    for (std::size_t i = 0; i < bag.size(); ++i) {
      if (i) out << ", ";
      out << bag[i].to_string();
    }
    out << '\n';
  }
  return out.str();
}

PathDecomposition PathDecomposition::parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  PathDecomposition d;
  std::size_t declared = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("pathdecomp", 0) == 0) {
      std::istringstream hs(line.substr(10));
      if (!(hs >> declared)) throw ParseError(lineno, "bad pathdecomp header");
      have_header = true;
      continue;
    }
    if (line.rfind("bag", 0) != 0) throw ParseError(lineno, "expected bag line");
    std::string rest = line.substr(3);
    std::vector<VertexLabel> bag;
    std::size_t start = 0;
    while (start <= rest.size()) {
      auto comma = rest.find(',', start);
      std::string item = rest.substr(start, comma == std::string::npos
                                                 ? std::string::npos
                                                 : comma - start);
      auto first = item.find_first_not_of(" \t");
      if (first != std::string::npos) {
        auto last = item.find_last_not_of(" \t");
        try {
          bag.push_back(VertexLabel::parse(item.substr(first, last - first + 1)));
        } catch (const Error& e) {
          throw ParseError(lineno, e.what());
        }
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    d.bags.push_back(std::move(bag));
  }
  if (!have_header) throw ParseError(1, "missing pathdecomp header");
  if (d.bags.size() != declared)
    throw ParseError(lineno, "bag count differs from header");
  return d;
}

PathDecomposition build_blocked_decomposition(int k, int n) {
  if (k < 1 || n < 2) throw ParameterMismatch("blocked decomposition needs k >= 1, n >= 2");
  PathDecomposition d;
  auto r_row = [&](int j) {
    std::vector<VertexLabel> v;
    for (int l = 1; l <= k; ++l) v.push_back(r_label(l, j));
    return v;
  };
  auto s_row = [&](int j) {
    std::vector<VertexLabel> v;
    for (int l = 1; l <= k; ++l) v.push_back(s_label(l, j));
    return v;
  };
  {
    std::vector<VertexLabel> b2{x_label(1)};
    auto r = r_row(1);
    b2.insert(b2.end(), r.begin(), r.end());
    d.bags.push_back(std::move(b2));
    auto b3 = s_row(1);
    auto r1 = r_row(1);
    b3.insert(b3.end(), r1.begin(), r1.end());
    d.bags.push_back(std::move(b3));
  }
  for (int j = 2; j <= n; ++j) {
    auto b1 = s_row(j - 1);
    auto r = r_row(j);
    b1.insert(b1.end(), r.begin(), r.end());
    d.bags.push_back(std::move(b1));
    std::vector<VertexLabel> b2{x_label(j)};
    b2.insert(b2.end(), r.begin(), r.end());
    d.bags.push_back(std::move(b2));
    auto b3 = s_row(j);
    b3.insert(b3.end(), r.begin(), r.end());
    d.bags.push_back(std::move(b3));
  }
  return d;
}

namespace {

DecompositionCheck validate_resolved(const Graph& g,
                                     const std::vector<std::vector<int>>& bags) {
  DecompositionCheck out;
  const int n = g.num_vertices();
  std::vector<int> first(n, -1), last(n, -1);
  int width = -1;
  for (std::size_t b = 0; b < bags.size(); ++b) {
    width = std::max(width, static_cast<int>(bags[b].size()) - 1);
    for (int v : bags[b]) {
      if (first[v] < 0) first[v] = static_cast<int>(b);
      last[v] = static_cast<int>(b);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (first[v] < 0) {
      out.violation = "vertex not covered: " + g.label(v).to_string();
      return out;
    }
  }
  // contiguity
  for (int v = 0; v < n; ++v) {
    for (int b = first[v]; b <= last[v]; ++b) {
      if (!std::binary_search(bags[b].begin(), bags[b].end(), v)) {
        out.violation = "vertex " + g.label(v).to_string() +
                        " missing from bag " + std::to_string(b) +
                        " inside its run";
        return out;
      }
    }
  }
  // edge coverage
  for (int u = 0; u < n; ++u) {
    for (int v : g.neighbors(u)) {
      if (v < u) continue;
      int lo = std::max(first[u], first[v]);
      int hi = std::min(last[u], last[v]);
      if (lo > hi) {
        out.violation = "edge not covered: {" + g.label(u).to_string() + ", " +
                        g.label(v).to_string() + "}";
        return out;
      }
    }
  }
  out.valid = true;
  out.width = width;
  return out;
}

DecompositionCheck validate_with_lookup(
    const Graph& g, const PathDecomposition& d,
    const std::function<std::optional<int>(const VertexLabel&)>& lookup) {
  DecompositionCheck out;
  std::vector<std::vector<int>> bags;
  bags.reserve(d.bags.size());
  for (const auto& bag : d.bags) {
    std::vector<int> ids;
    for (const auto& label : bag) {
      auto v = lookup(label);
      if (!v) {
        out.violation = "unknown vertex label: " + label.to_string();
        return out;
      }
      ids.push_back(*v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    bags.push_back(std::move(ids));
  }
  return validate_resolved(g, bags);
}

}  // namespace

DecompositionCheck validate_path_decomposition(const Graph& g, const PathDecomposition& d) {
  return validate_with_lookup(g, d, [&](const VertexLabel& l) { return g.find_vertex(l); });
}

DecompositionCheck validate_path_decomposition(const Graph& g, const PathDecomposition& d,
                                               const std::map<VertexLabel, int>& resolve) {
  return validate_with_lookup(g, d, [&](const VertexLabel& l) -> std::optional<int> {
    auto it = resolve.find(l);
    if (it == resolve.end()) return std::nullopt;
    return it->second;
  });
}

std::map<VertexLabel, int> map_blocked_labels(const CnfFormula& f, const Graph& incidence,
                                            const Contraction& con) {
  const auto& p = f.provenance;
  if (p.mode != GeneratorMode::BlockPathwidth)
    throw ParameterMismatch("contracted labels exist only for blockpw instances");
  const int k = p.k, b = p.b;
  const int n = [&] {
    int count = 0;
    for (int v = 1; v <= f.vars.size(); ++v)
      if (f.vars.descriptor(v).role == VarRole::X) ++count;
    return count;
  }();

  std::map<VertexLabel, int> out;
  for (int j = 1; j <= n; ++j) {
    int orig = f.vars.x_var(j) - 1;
    out[x_label(j)] = con.vertex_map[orig];
  }
  for (int l = 1; l <= k; ++l) {
    int first_row = (l - 1) * b + 1;
    for (int j = 1; j <= n; ++j) {
      int z_orig = f.vars.z_var(first_row, j) - 1;
      out[s_label(l, j)] = con.vertex_map[z_orig];
      // clause of block (j, l): adjacent to both x_j and z_{first_row, j}
      int x_orig = f.vars.x_var(j) - 1;
      int found = -1;
      for (int cand : incidence.neighbors(x_orig)) {
        if (incidence.has_edge(cand, z_orig)) {
          found = cand;
          break;
        }
      }
      if (found < 0) throw Error("no clause found for block (" + std::to_string(j) +
                                 ", " + std::to_string(l) + ")");
      out[r_label(l, j)] = con.vertex_map[found];
    }
  }
  return out;
}

BlockedWidthCheck check_blocked_width(const CnfFormula& f) {
  BlockedWidthCheck out;
  const auto& p = f.provenance;
  if (p.mode != GeneratorMode::BlockPathwidth) {
    out.violation = "not a blockpw instance";
    return out;
  }
  Graph inc = incidence_graph(f);
  Contraction con = modular_contraction(inc);
  out.contracted_vertices = con.graph.num_vertices();
  int n = 0;
  for (int v = 1; v <= f.vars.size(); ++v)
    if (f.vars.descriptor(v).role == VarRole::X) ++n;
  PathDecomposition d = build_blocked_decomposition(p.k, n);
  auto resolve = map_blocked_labels(f, inc, con);
  auto check = validate_path_decomposition(con.graph, d, resolve);
  out.valid = check.valid;
  out.width = check.width;
  out.violation = check.violation;
  return out;
}

int exact_pathwidth(const Graph& g) {
  const int n = g.num_vertices();
  if (n > 20) throw TooLarge("exact pathwidth is limited to 20 vertices");
  if (n <= 1) return 0;

  std::vector<std::uint32_t> adj(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbors(v)) adj[v] |= std::uint32_t{1} << u;

  const std::uint32_t full = (n == 32) ? ~0u : ((std::uint32_t{1} << n) - 1);
  std::vector<std::uint8_t> best(std::size_t{1} << n, 0xff);
  best[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    // boundary of S: members with a neighbor outside S
    int boundary = 0;
    for (std::uint32_t rest = s; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if (adj[v] & ~s) ++boundary;
    }
    int value = 0xff;
    for (std::uint32_t rest = s; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      value = std::min(value, static_cast<int>(best[s & ~(std::uint32_t{1} << v)]));
    }
    best[s] = static_cast<std::uint8_t>(std::max(value, boundary));
  }
  return best[full];
}

}  // namespace kcgen
