#include "kcgen/f2.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>

namespace kcgen {

F2Word F2Word::from_string(std::string_view bits) {
  F2Word w(bits.size());
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1')
      w.set(j, true);
    else if (bits[j] != '0')
      throw Error("bit string must contain only 0 and 1");
  }
  return w;
}

F2Word& F2Word::operator^=(const F2Word& o) {
  if (n_ != o.n_) throw LengthMismatch("xor of words of different length");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

bool F2Word::any() const {
  for (auto x : w_)
    if (x) return true;
  return false;
}

bool F2Word::parity() const {
  std::uint64_t acc = 0;
  for (auto x : w_) acc ^= x;
  return std::popcount(acc) & 1;
}

bool F2Word::dot(const F2Word& mask) const {
  if (n_ != mask.n_) throw LengthMismatch("dot of words of different length");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & mask.w_[i];
  return std::popcount(acc) & 1;
}

std::string F2Word::to_string() const {
  std::string s(n_, '0');
  for (std::size_t j = 0; j < n_; ++j)
    if (get(j)) s[j] = '1';
  return s;
}

bool F2Word::operator<(const F2Word& o) const {
  return to_string() < o.to_string();
}

F2Matrix F2Matrix::from_rows(std::initializer_list<std::string_view> rows) {
  F2Matrix a;
  for (auto r : rows) {
    F2Word w = F2Word::from_string(r);
    if (a.rows_.empty()) a.n_ = w.size();
    if (w.size() != a.n_) throw LengthMismatch("ragged matrix rows");
    a.rows_.push_back(std::move(w));
  }
  return a;
}

std::string F2Matrix::to_text() const {
  std::ostringstream out;
  out << num_rows() << ' ' << num_cols() << '\n';
  for (const auto& r : rows_) out << r.to_string() << '\n';
  return out.str();
}

F2Matrix F2Matrix::parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty matrix text");
  ++lineno;
  std::istringstream head(line);
  std::size_t m = 0, n = 0;
  if (!(head >> m >> n) || n < 1) throw ParseError(lineno, "expected header \"m n\"");
  F2Matrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw ParseError(lineno + 1, "missing matrix row");
    ++lineno;
    if (line.size() != n) throw ParseError(lineno, "row length differs from n");
    for (std::size_t j = 0; j < n; ++j) {
      if (line[j] == '1')
        a.set(i, j, true);
      else if (line[j] != '0')
        throw ParseError(lineno, "matrix rows must contain only 0 and 1");
    }
  }
  return a;
}

std::size_t rank(const F2Matrix& a) {
  std::vector<F2Word> rows;
  rows.reserve(a.num_rows());
  for (std::size_t i = 0; i < a.num_rows(); ++i) rows.push_back(a.row(i));
  std::size_t r = 0;
  const std::size_t n = a.num_cols();
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && !rows[pivot].get(col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i].get(col)) rows[i] ^= rows[r];
    ++r;
  }
  return r;
}

F2Matrix sample_parity_check(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ParameterMismatch("sample_parity_check requires n >= 1");
  std::mt19937_64 rng(seed);
  F2Matrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set(i, j, rng() & 1);
  return a;
}

LinearCode::LinearCode(F2Matrix check_matrix)
    : a_(std::move(check_matrix)), rank_(kcgen::rank(a_)) {
  if (a_.num_cols() < 1) throw ParameterMismatch("code length must be >= 1");
}

bool LinearCode::is_codeword(const F2Word& word) const {
  if (word.size() != length())
    throw LengthMismatch("word length differs from code length");
  for (std::size_t i = 0; i < a_.num_rows(); ++i)
    if (word.dot(a_.row(i))) return false;
  return true;
}

std::vector<F2Word> LinearCode::enumerate_codewords(std::size_t cap) const {
  const std::size_t n = length();
  const std::size_t dim = n - rank_;
  if (dim >= 64 || (std::size_t{1} << dim) > cap)
    throw CapExceeded("code has 2^" + std::to_string(dim) + " words");

  // Reduced row echelon form; free columns index the nullspace basis.
  std::vector<F2Word> rows;
  for (std::size_t i = 0; i < a_.num_rows(); ++i) rows.push_back(a_.row(i));
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && !rows[pivot].get(col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i].get(col)) rows[i] ^= rows[r];
    pivot_col.push_back(col);
    ++r;
  }

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  std::vector<F2Word> basis;
  for (auto f : free_cols) {
    F2Word v(n);
    v.set(f, true);
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      if (rows[i].get(f)) v.set(pivot_col[i], true);
    basis.push_back(std::move(v));
  }

  std::vector<F2Word> words;
  words.reserve(std::size_t{1} << dim);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dim); ++mask) {
    F2Word w(n);
    for (std::size_t t = 0; t < dim; ++t)
      if ((mask >> t) & 1) w ^= basis[t];
    words.push_back(std::move(w));
  }
  std::sort(words.begin(), words.end());
  return words;
}

BigInt LinearCode::affine_model_count() const {
  return pow2(length() - rank_);
}

}  // namespace kcgen
