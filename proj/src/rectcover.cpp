#include "kcgen/rectcover.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

namespace kcgen {

TruthTable::TruthTable(std::vector<int> variables) : vars_(std::move(variables)) {
  if (vars_.size() > 12) throw TooLarge("truth tables are limited to 12 variables");
  {
    auto sorted = vars_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("duplicate variable in truth table");
  }
  bits_.assign(std::size_t{1} << vars_.size(), false);
}

TruthTable TruthTable::characteristic(const LinearCode& code) {
  const std::size_t n = code.length();
  std::vector<int> vars(n);
  for (std::size_t j = 0; j < n; ++j) vars[j] = static_cast<int>(j + 1);
  TruthTable t(std::move(vars));
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    F2Word w(n);
    for (std::size_t j = 0; j < n; ++j) w.set(j, (idx >> j) & 1);
    t.set(idx, code.is_codeword(w));
  }
  return t;
}

namespace {

std::string bits_to_hex(const std::vector<bool>& bits) {
  std::string out;
  const char* digits = "0123456789abcdef";
  for (std::size_t start = 0; start < bits.size(); start += 4) {
    int nibble = 0;
    for (std::size_t t = 0; t < 4; ++t) {
      nibble <<= 1;
      if (start + t < bits.size() && bits[start + t]) nibble |= 1;
    }
    out.push_back(digits[nibble]);
  }
  return out;
}

std::vector<bool> hex_to_bits(std::string_view hex, std::size_t count) {
  std::vector<bool> bits(count, false);
  if (hex.size() != (count + 3) / 4) throw Error("hex string length mismatch");
  for (std::size_t i = 0; i < hex.size(); ++i) {
    char ch = hex[i];
    int nibble;
    if (ch >= '0' && ch <= '9')
      nibble = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      nibble = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F')
      nibble = ch - 'A' + 10;
    else
      throw Error("bad hex digit");
    for (std::size_t t = 0; t < 4; ++t) {
      std::size_t pos = i * 4 + t;
      if (pos < count) bits[pos] = (nibble >> (3 - t)) & 1;
    }
  }
  return bits;
}

}  // namespace

std::string TruthTable::bits_hex() const { return bits_to_hex(bits_); }

TruthTable TruthTable::from_hex(std::vector<int> variables, std::string_view hex) {
  TruthTable t(std::move(variables));
  auto bits = hex_to_bits(hex, t.size());
  for (std::uint32_t i = 0; i < t.size(); ++i) t.set(i, bits[i]);
  return t;
}

std::string TruthTable::to_text() const {
  std::ostringstream out;
  out << "table";
  for (int v : vars_) out << ' ' << v;
  out << "\nbits " << bits_to_hex(bits_) << '\n';
  return out.str();
}

TruthTable TruthTable::parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<int> vars;
  std::string hex;
  bool have_vars = false, have_bits = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "table") {
      int v;
      while (ls >> v) vars.push_back(v);
      have_vars = true;
    } else if (tag == "bits") {
      if (!(ls >> hex)) throw ParseError(lineno, "missing hex bits");
      have_bits = true;
    } else {
      throw ParseError(lineno, "unknown line tag " + tag);
    }
  }
  if (!have_vars || !have_bits) throw ParseError(lineno ? lineno : 1, "incomplete table");
  TruthTable t(std::move(vars));
  auto bits = hex_to_bits(hex, t.size());
  for (std::uint32_t i = 0; i < t.size(); ++i) t.set(i, bits[i]);
  return t;
}

bool Partition::balanced(Fraction beta, std::size_t total_vars) const {
  std::size_t smaller = std::min(left.size(), right.size());
  return static_cast<long>(smaller) * beta.den >=
         beta.num * static_cast<long>(total_vars);
}

namespace {

// Positions of `side` variables inside the domain variable list.
std::vector<std::size_t> side_positions(const std::vector<int>& domain,
                                        const std::vector<int>& side) {
  std::vector<std::size_t> pos;
  pos.reserve(side.size());
  for (int v : side) {
    auto it = std::find(domain.begin(), domain.end(), v);
    if (it == domain.end()) throw Error("partition variable not in function domain");
    pos.push_back(static_cast<std::size_t>(it - domain.begin()));
  }
  return pos;
}

std::uint32_t side_index(std::uint32_t domain_index, const std::vector<std::size_t>& pos) {
  std::uint32_t out = 0;
  for (std::size_t t = 0; t < pos.size(); ++t)
    if ((domain_index >> pos[t]) & 1) out |= std::uint32_t{1} << t;
  return out;
}

void check_partition(const TruthTable& f, const Partition& p) {
  std::vector<int> all = p.left;
  all.insert(all.end(), p.right.begin(), p.right.end());
  std::sort(all.begin(), all.end());
  auto domain = f.variables();
  std::sort(domain.begin(), domain.end());
  if (all != domain) throw Error("partition does not split the function's variables");
}

}  // namespace

bool Rectangle::accepts(const TruthTable& domain, std::uint32_t index) const {
  auto lpos = side_positions(domain.variables(), partition.left);
  auto rpos = side_positions(domain.variables(), partition.right);
  return left_table.get(side_index(index, lpos)) &&
         right_table.get(side_index(index, rpos));
}

bool is_rectangle(const TruthTable& f, const Partition& p) {
  check_partition(f, p);
  auto lpos = side_positions(f.variables(), p.left);
  auto rpos = side_positions(f.variables(), p.right);
  const std::uint32_t rows = std::uint32_t{1} << p.left.size();
  std::vector<std::vector<bool>> pattern(rows);
  for (std::uint32_t idx = 0; idx < f.size(); ++idx) {
    if (!f.get(idx)) continue;
    std::uint32_t r = side_index(idx, lpos);
    if (pattern[r].empty()) pattern[r].assign(std::size_t{1} << p.right.size(), false);
    pattern[r][side_index(idx, rpos)] = true;
  }
  const std::vector<bool>* first = nullptr;
  for (std::uint32_t r = 0; r < rows; ++r) {
    if (pattern[r].empty()) continue;
    if (!first)
      first = &pattern[r];
    else if (*first != pattern[r])
      return false;
  }
  return true;
}

CoverCheck verify_cover(const TruthTable& f, const RectangleCover& cover, Fraction beta) {
  CoverCheck out;
  for (std::size_t i = 0; i < cover.rectangles.size(); ++i) {
    const auto& rect = cover.rectangles[i];
    try {
      check_partition(f, rect.partition);
    } catch (const Error& e) {
      out.violation = "rectangle " + std::to_string(i) + ": " + e.what();
      return out;
    }
    if (!rect.partition.balanced(beta, f.num_vars())) {
      out.violation = "rectangle " + std::to_string(i) + ": partition not balanced";
      return out;
    }
    if (rect.left_table.num_vars() != rect.partition.left.size() ||
        rect.right_table.num_vars() != rect.partition.right.size()) {
      out.violation = "rectangle " + std::to_string(i) + ": side table arity mismatch";
      return out;
    }
  }
  for (std::uint32_t idx = 0; idx < f.size(); ++idx) {
    bool covered = false;
    for (const auto& rect : cover.rectangles)
      if (rect.accepts(f, idx)) {
        covered = true;
        break;
      }
    if (covered && !f.get(idx)) {
      out.violation = "point " + std::to_string(idx) + " covered but not in f";
      return out;
    }
    if (!covered && f.get(idx)) {
      out.violation = "point " + std::to_string(idx) + " of f not covered";
      return out;
    }
  }
  out.ok = true;
  return out;
}

namespace {

using PointSet = std::vector<std::uint64_t>;  // bitset over the 1-points of f

void set_point(PointSet& s, std::size_t p) { s[p >> 6] |= std::uint64_t{1} << (p & 63); }

bool subset_of(const PointSet& a, const PointSet& b) {
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[w] & ~b[w]) return false;
  return true;
}

struct CoverSearch {
  std::vector<PointSet> sets;
  std::size_t words;
  std::size_t num_points;
  std::size_t cap;
  std::size_t explored = 0;
  std::size_t best;

  std::size_t max_set_size() const {
    std::size_t best_size = 1;
    for (const auto& s : sets) {
      std::size_t c = 0;
      for (auto w : s) c += std::popcount(w);
      best_size = std::max(best_size, c);
    }
    return best_size;
  }

  void search(const PointSet& covered, std::size_t used, std::size_t biggest) {
    if (++explored > cap) throw CapExceeded("set-cover search exceeded cap");
    std::size_t remaining = num_points;
    int first_uncovered = -1;
    for (std::size_t w = 0; w < words; ++w) {
      remaining -= std::popcount(covered[w]);
      if (first_uncovered < 0) {
        std::uint64_t free_bits = ~covered[w];
        if (w + 1 == words && (num_points & 63))
          free_bits &= (std::uint64_t{1} << (num_points & 63)) - 1;
        if (free_bits)
          first_uncovered = static_cast<int>(w * 64 + std::countr_zero(free_bits));
      }
    }
    if (remaining == 0) {
      best = std::min(best, used);
      return;
    }
    if (used + (remaining + biggest - 1) / biggest >= best) return;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const auto& candidate = sets[s];
      if (!((candidate[first_uncovered >> 6] >> (first_uncovered & 63)) & 1)) continue;
      PointSet next = covered;
      for (std::size_t w = 0; w < words; ++w) next[w] |= candidate[w];
      search(next, used + 1, biggest);
    }
  }
};

}  // namespace

std::size_t min_cover_bruteforce(const TruthTable& f, Fraction beta, std::size_t cap) {
  const std::size_t n = f.num_vars();
  if (n > 8) throw TooLarge("minimum-cover search is limited to 8 variables");

  std::vector<std::uint32_t> ones;
  for (std::uint32_t idx = 0; idx < f.size(); ++idx)
    if (f.get(idx)) ones.push_back(idx);
  if (ones.empty()) return 0;

  std::vector<std::size_t> point_of(f.size(), 0);
  for (std::size_t t = 0; t < ones.size(); ++t) point_of[ones[t]] = t;
  const std::size_t words = (ones.size() + 63) / 64;

  std::set<PointSet> rectangles;
  bool any_partition = false;
  // Subsets containing position 0 enumerate unordered partitions once.
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); mask += 2) {
    Partition p;
    for (std::size_t t = 0; t < n; ++t)
      ((mask >> t) & 1 ? p.left : p.right).push_back(f.variables()[t]);
    if (p.right.empty() || !p.balanced(beta, n)) continue;
    any_partition = true;

    auto lpos = side_positions(f.variables(), p.left);
    auto rpos = side_positions(f.variables(), p.right);
    const std::uint32_t rows = std::uint32_t{1} << p.left.size();
    const std::uint32_t cols = std::uint32_t{1} << p.right.size();

    // colset per row, as bitsets over column indices
    std::vector<std::vector<std::uint64_t>> colset(rows,
                                                   std::vector<std::uint64_t>((cols + 63) / 64, 0));
    for (auto idx : ones) {
      std::uint32_t r = side_index(idx, lpos), c = side_index(idx, rpos);
      colset[r][c >> 6] |= std::uint64_t{1} << (c & 63);
    }

    // Maximal 1-monochromatic rectangles are the concepts of the row/column
    // relation; their column sets are closed under intersection and are all
    // reachable from the distinct row patterns.
    std::set<std::vector<std::uint64_t>> closed;
    for (std::uint32_t r = 0; r < rows; ++r) {
      bool empty = std::all_of(colset[r].begin(), colset[r].end(),
                               [](std::uint64_t w) { return w == 0; });
      if (!empty) closed.insert(colset[r]);
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<std::uint64_t>> items(closed.begin(), closed.end());
      for (std::size_t i = 0; i < items.size() && !grew; ++i)
        for (std::size_t j = i + 1; j < items.size(); ++j) {
          std::vector<std::uint64_t> meet(items[i].size());
          bool empty = true;
          for (std::size_t w = 0; w < meet.size(); ++w) {
            meet[w] = items[i][w] & items[j][w];
            if (meet[w]) empty = false;
          }
          if (empty) continue;
          if (closed.insert(std::move(meet)).second) {
            grew = true;
            break;
          }
          if (closed.size() > cap) throw CapExceeded("too many closed column sets");
        }
    }

    for (const auto& cset : closed) {
      PointSet points(words, 0);
      for (std::uint32_t r = 0; r < rows; ++r) {
        if (!subset_of(cset, colset[r])) continue;
        for (std::uint32_t c = 0; c < cols; ++c)
          if ((cset[c >> 6] >> (c & 63)) & 1) {
            // reconstruct the domain index of (r, c)
            std::uint32_t idx = 0;
            for (std::size_t t = 0; t < lpos.size(); ++t)
              if ((r >> t) & 1) idx |= std::uint32_t{1} << lpos[t];
            for (std::size_t t = 0; t < rpos.size(); ++t)
              if ((c >> t) & 1) idx |= std::uint32_t{1} << rpos[t];
            set_point(points, point_of[idx]);
          }
      }
      rectangles.insert(std::move(points));
      if (rectangles.size() > cap) throw CapExceeded("too many candidate rectangles");
    }
  }
  if (!any_partition) throw Error("no balanced partition exists for this beta");

  // Drop rectangles strictly contained in another.
  std::vector<PointSet> sets(rectangles.begin(), rectangles.end());
  std::vector<PointSet> maximal;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < sets.size() && !dominated; ++j)
      if (i != j && sets[i] != sets[j] && subset_of(sets[i], sets[j])) dominated = true;
    if (!dominated) maximal.push_back(sets[i]);
  }

  CoverSearch search;
  search.sets = std::move(maximal);
  search.words = words;
  search.num_points = ones.size();
  search.cap = cap;
  search.best = search.sets.size() + 1;
  PointSet none(words, 0);
  search.search(none, 0, search.max_set_size());
  return search.best;
}

std::string RectangleCover::to_text() const {
  std::ostringstream out;
  out << "cover " << rectangles.size() << '\n';
  for (std::size_t i = 0; i < rectangles.size(); ++i) {
    const auto& r = rectangles[i];
    out << "rect " << i << '\n';
    out << "left";
    for (int v : r.partition.left) out << ' ' << v;
    out << "\nright";
    for (int v : r.partition.right) out << ' ' << v;
    out << "\nlefttable " << r.left_table.bits_hex() << '\n';
    out << "righttable " << r.right_table.bits_hex() << '\n';
  }
  return out.str();
}

RectangleCover RectangleCover::parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  RectangleCover cover;
  std::size_t declared = 0;
  bool have_header = false;
  Rectangle current;
  std::string left_hex, right_hex;
  int stage = 0;  // 0 outside, counts rect / left / right / lefttable / righttable

  auto flush = [&]() {
    if (stage == 0) return;
    if (stage != 5) throw ParseError(lineno, "incomplete rectangle");
    current.left_table = TruthTable::from_hex(current.partition.left, left_hex);
    current.right_table = TruthTable::from_hex(current.partition.right, right_hex);
    cover.rectangles.push_back(std::move(current));
    current = Rectangle{};
    stage = 0;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "cover") {
      if (!(ls >> declared)) throw ParseError(lineno, "bad cover header");
      have_header = true;
    } else if (tag == "rect") {
      flush();
      stage = 1;
    } else if (tag == "left") {
      if (stage != 1) throw ParseError(lineno, "left outside rectangle");
      int v;
      while (ls >> v) current.partition.left.push_back(v);
      stage = 2;
    } else if (tag == "right") {
      if (stage != 2) throw ParseError(lineno, "right out of order");
      int v;
      while (ls >> v) current.partition.right.push_back(v);
      stage = 3;
    } else if (tag == "lefttable") {
      if (stage != 3 || !(ls >> left_hex)) throw ParseError(lineno, "bad lefttable");
      stage = 4;
    } else if (tag == "righttable") {
      if (stage != 4 || !(ls >> right_hex)) throw ParseError(lineno, "bad righttable");
      stage = 5;
    } else {
      throw ParseError(lineno, "unknown line tag " + tag);
    }
  }
  flush();
  if (!have_header) throw ParseError(1, "missing cover header");
  if (cover.rectangles.size() != declared)
    throw ParseError(lineno, "rectangle count differs from header");
  return cover;
}

}  // namespace kcgen
