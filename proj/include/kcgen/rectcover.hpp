#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kcgen/errors.hpp"
#include "kcgen/f2.hpp"

namespace kcgen {

/// Exact rational balance threshold.
struct Fraction {
  long num = 1;
  long den = 3;
};

/// Boolean function over an ordered variable list (at most 12 variables),
/// stored as 2^n bits. Bit t of an assignment index is the value of
/// variables[t].
class TruthTable {
 public:
  TruthTable() = default;
  explicit TruthTable(std::vector<int> variables);

  /// Truth table of the characteristic function of a code: 1 exactly on
  /// codewords (variables 1..n in word order).
  static TruthTable characteristic(const LinearCode& code);

  const std::vector<int>& variables() const { return vars_; }
  std::size_t num_vars() const { return vars_.size(); }
  bool get(std::uint32_t index) const { return bits_[index]; }
  void set(std::uint32_t index, bool v) { bits_[index] = v; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(bits_.size()); }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

  /// Hex text: "table <vars...>" then "bits <hex>", index 0 in the first
  /// nibble's most significant bit.
  std::string to_text() const;
  static TruthTable parse_text(std::string_view text);

  std::string bits_hex() const;
  static TruthTable from_hex(std::vector<int> variables, std::string_view hex);

 private:
  std::vector<int> vars_;
  std::vector<bool> bits_;
};

/// Two-sided split of a variable list. beta-balanced iff
/// min(|X1|, |X2|) >= beta * |X|.
struct Partition {
  std::vector<int> left;
  std::vector<int> right;

  bool balanced(Fraction beta, std::size_t total_vars) const;
};

/// r = r1 ∧ r2 with r1 over the left side and r2 over the right side.
/// The side predicates are truth tables over the side variable lists.
struct Rectangle {
  Partition partition;
  TruthTable left_table;
  TruthTable right_table;

  bool accepts(const TruthTable& domain, std::uint32_t index) const;
};

struct RectangleCover {
  std::vector<Rectangle> rectangles;

  std::string to_text() const;
  static RectangleCover parse_text(std::string_view text);
};

/// True iff the 1-set of f, viewed as a matrix over assignments to the two
/// sides of the partition, is a product of a row set and a column set.
bool is_rectangle(const TruthTable& f, const Partition& p);

struct CoverCheck {
  bool ok = false;
  std::string violation;
};

/// Checks balance of every partition, that each member is a genuine
/// rectangle over its own partition, and that the pointwise disjunction of
/// the members equals f.
CoverCheck verify_cover(const TruthTable& f, const RectangleCover& cover, Fraction beta);

/// Minimum size of a cover of f by rectangles over beta-balanced
/// partitions; exact search over maximal 1-monochromatic rectangles per
/// partition plus exact set cover. 0 for the constant-0 function.
/// Throws TooLarge above 8 variables, CapExceeded past the search cap.
std::size_t min_cover_bruteforce(const TruthTable& f, Fraction beta,
                                 std::size_t cap = 1u << 20);

}  // namespace kcgen
