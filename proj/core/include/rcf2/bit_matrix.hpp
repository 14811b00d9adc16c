#pragma once

// Dense bit-packed matrices and vectors over F2.
//
// A row is one 64-bit word with column j stored in bit j. Matrices with at
// most 64 entries also have a single-word row-major flattening (entry (i, j)
// at bit i * cols + j), which is the coordinate system used by every
// subspace in the library.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rcf2 {

using Word = std::uint64_t;

inline constexpr std::size_t kWordBits = 64;

constexpr Word low_mask(std::size_t bits) noexcept {
  return bits >= kWordBits ? ~Word{0} : (Word{1} << bits) - 1;
}

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length, Word bits = 0);

  static BitVector unit(std::size_t length, std::size_t index);
  /// Parses a string of '0'/'1' characters, index 0 first.
  static BitVector from_string(std::string_view text);

  std::size_t size() const noexcept { return length_; }
  Word word() const noexcept { return bits_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);
  bool is_zero() const noexcept { return bits_ == 0; }
  std::size_t weight() const noexcept;

  std::string to_string() const;

  BitVector& operator+=(const BitVector& other);
  friend BitVector operator+(BitVector a, const BitVector& b) { return a += b; }
  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t length_ = 0;
  Word bits_ = 0;
};

/// Inner product over F2.
bool dot(const BitVector& a, const BitVector& b);

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  /// E_{i,j}: the matrix with a single one at (i, j).
  static BitMatrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);
  static BitMatrix from_rows(std::size_t cols, std::vector<Word> rows);
  /// One string per row, characters '0'/'1'; all strings must have equal length.
  static BitMatrix from_strings(const std::vector<std::string>& rows);
  /// Inverse of flatten(): entry (i, j) is bit i * cols + j of `bits`.
  static BitMatrix unflatten(std::size_t rows, std::size_t cols, Word bits);
  static BitMatrix from_columns(std::size_t rows, std::span<const BitVector> columns);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_.empty() || cols_ == 0; }

  bool get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, bool value);
  void flip(std::size_t i, std::size_t j);

  Word row(std::size_t i) const { return rows_[i]; }
  void set_row(std::size_t i, Word bits);
  std::span<const Word> row_words() const noexcept { return rows_; }
  BitVector row_vector(std::size_t i) const;
  BitVector column(std::size_t j) const;

  /// Row-major flattening; requires rows() * cols() <= 64.
  Word flatten() const;

  BitMatrix transpose() const;
  bool is_zero() const noexcept;
  /// Number of rows and columns of a sub-block starting at (row0, col0).
  BitMatrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;

  std::string to_string() const;

  BitMatrix& operator+=(const BitMatrix& other);
  friend BitMatrix operator+(BitMatrix a, const BitMatrix& b) { return a += b; }
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::vector<Word> rows_;
  std::size_t cols_ = 0;
};

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
BitVector operator*(const BitMatrix& m, const BitVector& x);

std::size_t rank(const BitMatrix& m);

struct RrefResult {
  BitMatrix reduced;
  std::vector<std::size_t> pivot_cols;
  /// Invertible T with T * input == reduced.
  BitMatrix row_transform;
};

RrefResult rref(const BitMatrix& m);

/// Basis of {x : m x = 0}, one vector per non-pivot column.
std::vector<BitVector> nullspace(const BitMatrix& m);

/// Basis of {y : y^T m = 0}.
std::vector<BitVector> left_kernel(const BitMatrix& m);

std::optional<BitMatrix> inverse(const BitMatrix& m);

/// |GL_n(F2)| = prod_{i<n} (2^n - 2^i).
std::uint64_t gl_order(std::size_t n);

/// Pulls every invertible n x n matrix exactly once, 1 <= n <= 5.
///
/// Order: lexicographic on the sequence of row words (row 0 most
/// significant, each row compared as an integer).
class GlEnumerator {
 public:
  explicit GlEnumerator(std::size_t n);

  bool next();
  const BitMatrix& current() const noexcept { return current_; }

 private:
  void fill_from(std::size_t level);

  std::size_t n_;
  bool started_ = false;
  std::vector<Word> rows_;
  // spans_[i] is the set of vectors in the span of rows 0..i-1, as a bitmask over F2^n.
  std::vector<std::uint32_t> spans_;
  BitMatrix current_;
};

/// Cached list of GL_n(F2) in enumeration order, 1 <= n <= 4.
const std::vector<BitMatrix>& gl_group(std::size_t n);

}  // namespace rcf2
