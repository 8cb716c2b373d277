#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kcgen/bigint.hpp"
#include "kcgen/errors.hpp"

namespace kcgen {

/// Bit vector over GF(2). Bits are little-endian: bit j corresponds to
/// column j (0-based), i.e. to variable x_{j+1}.
class F2Word {
 public:
  F2Word() = default;
  explicit F2Word(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  /// Builds a word from a 0/1 character string, leftmost char = bit 0.
  static F2Word from_string(std::string_view bits);

  std::size_t size() const { return n_; }
  bool get(std::size_t j) const { return (w_[j >> 6] >> (j & 63)) & 1; }
  void set(std::size_t j, bool v) {
    std::uint64_t m = std::uint64_t{1} << (j & 63);
    if (v)
      w_[j >> 6] |= m;
    else
      w_[j >> 6] &= ~m;
  }

  F2Word& operator^=(const F2Word& o);
  bool any() const;
  bool parity() const;

  /// Parity of the AND with a mask word of the same length.
  bool dot(const F2Word& mask) const;

  std::string to_string() const;

  friend bool operator==(const F2Word&, const F2Word&) = default;
  bool operator<(const F2Word& o) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Dense bit matrix over GF(2); rows are F2Words of length num_cols.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t m, std::size_t n) : n_(n), rows_(m, F2Word(n)) {}

  static F2Matrix from_rows(std::initializer_list<std::string_view> rows);

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return n_; }
  bool get(std::size_t i, std::size_t j) const { return rows_[i].get(j); }
  void set(std::size_t i, std::size_t j, bool v) { rows_[i].set(j, v); }
  const F2Word& row(std::size_t i) const { return rows_[i]; }

  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

  /// Text format: first line "m n", then m lines of n characters in {0,1}.
  std::string to_text() const;
  static F2Matrix parse_text(std::string_view text);

 private:
  std::size_t n_ = 0;
  std::vector<F2Word> rows_;
};

/// Dimension of the row space of A over GF(2).
std::size_t rank(const F2Matrix& a);

/// Uniform random m-by-n bit matrix, fully determined by seed.
/// Entries are drawn row-major from the low bit of std::mt19937_64(seed).
F2Matrix sample_parity_check(std::size_t m, std::size_t n, std::uint64_t seed);

/// The code C = {x : Ax = 0} of a parity-check matrix A.
class LinearCode {
 public:
  explicit LinearCode(F2Matrix check_matrix);

  const F2Matrix& check_matrix() const { return a_; }
  std::size_t length() const { return a_.num_cols(); }
  std::size_t rank() const { return rank_; }

  bool is_codeword(const F2Word& word) const;

  /// All codewords, sorted. Throws CapExceeded if 2^(n - rank) > cap.
  std::vector<F2Word> enumerate_codewords(std::size_t cap) const;

  /// Number of codewords, 2^(n - rank).
  BigInt affine_model_count() const;

 private:
  F2Matrix a_;
  std::size_t rank_;
};

}  // namespace kcgen
