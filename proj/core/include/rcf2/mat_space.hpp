#pragma once

// Linear and affine subspaces of Mat_{n,p}(F2).
//
// A subspace is stored as the fully reduced echelon basis of the row-major
// flattenings of its elements (pivot = lowest coordinate index, rows sorted by
// pivot). That representation is unique, so equality and hashing are bitwise.
// Ambient spaces are limited to n * p <= 64 coordinates.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rcf2/bit_matrix.hpp"

namespace rcf2 {

class MatSubspace {
 public:
  MatSubspace() = default;
  /// The zero subspace of Mat_{rows,cols}.
  MatSubspace(std::size_t rows, std::size_t cols);

  static MatSubspace full(std::size_t rows, std::size_t cols);
  static MatSubspace from_flat(std::size_t rows, std::size_t cols, std::span<const Word> vectors);
  static MatSubspace span(std::span<const BitMatrix> mats, std::size_t rows, std::size_t cols);
  /// Wraps a basis that is already canonical (fully reduced, pivot-sorted). Unchecked.
  static MatSubspace from_canonical(std::size_t rows, std::size_t cols, std::vector<Word> basis);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t ambient_dim() const noexcept { return rows_ * cols_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t codim() const noexcept { return ambient_dim() - dim(); }

  std::span<const Word> flat_basis() const noexcept { return basis_; }
  Word pivot_mask() const noexcept { return pivots_; }
  std::vector<BitMatrix> basis() const;
  BitMatrix basis_matrix(std::size_t j) const;

  /// Canonical coset representative of v modulo this subspace.
  Word reduce_flat(Word v) const noexcept {
    Word out = v;
    const Word hit = v & pivots_;
    if (!hit) return out;
    for (Word row : basis_) {
      if (hit & row & (~row + 1)) out ^= row;
    }
    return out;
  }
  bool contains_flat(Word v) const noexcept { return reduce_flat(v) == 0; }
  bool contains(const BitMatrix& m) const;

  /// Element with the given coordinates in the stored basis (bit j <-> basis j).
  Word element_flat(Word coords) const noexcept {
    Word out = 0;
    while (coords) {
      out ^= basis_[static_cast<std::size_t>(std::countr_zero(coords))];
      coords &= coords - 1;
    }
    return out;
  }
  BitMatrix element(Word coords) const;

  /// Coordinates of v in the stored basis; v must lie in the subspace.
  Word coordinates_flat(Word v) const;

  bool is_subspace_of(const MatSubspace& other) const;

  friend bool operator==(const MatSubspace&, const MatSubspace&) = default;

 private:
  friend class SubspaceEnumerator;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Word> basis_;
  Word pivots_ = 0;
};

struct MatSubspaceHash {
  std::size_t operator()(const MatSubspace& s) const noexcept;
};

/// Affine subspace offset + direction with the offset reduced modulo the
/// direction's pivots (unique representative per coset).
class AffineMatSpace {
 public:
  AffineMatSpace() = default;
  AffineMatSpace(const BitMatrix& offset, MatSubspace direction);
  static AffineMatSpace from_flat(Word offset, MatSubspace direction);

  const MatSubspace& direction() const noexcept { return direction_; }
  Word offset_flat() const noexcept { return offset_; }
  BitMatrix offset() const;
  std::size_t rows() const noexcept { return direction_.rows(); }
  std::size_t cols() const noexcept { return direction_.cols(); }
  std::size_t dim() const noexcept { return direction_.dim(); }
  std::size_t codim() const noexcept { return direction_.codim(); }
  bool contains_zero() const noexcept { return offset_ == 0; }
  bool contains_flat(Word v) const noexcept { return direction_.reduce_flat(v) == offset_; }
  bool contains(const BitMatrix& m) const;
  Word element_flat(Word coords) const noexcept { return offset_ ^ direction_.element_flat(coords); }

  friend bool operator==(const AffineMatSpace&, const AffineMatSpace&) = default;

 private:
  MatSubspace direction_;
  Word offset_ = 0;
};

struct AffineMatSpaceHash {
  std::size_t operator()(const AffineMatSpace& a) const noexcept;
};

// ---------------------------------------------------------------- constructions

/// S-perp inside Mat_{p,n} under the pairing (A, B) -> tr(B A).
MatSubspace orthogonal(const MatSubspace& s);

/// Block upper-triangular [A C; 0 B] with C free.
MatSubspace vee(const MatSubspace& a, const MatSubspace& b);

/// Horizontal juxtaposition [A B]; requires equal row counts.
MatSubspace coprod(const MatSubspace& a, const MatSubspace& b);

/// S x as a subspace of Mat_{n,1}.
MatSubspace apply(const MatSubspace& s, const BitVector& x);

struct Reduction {
  MatSubspace reduced;
  std::size_t u0_dim = 0;  // dimension of the common kernel
  std::size_t v0_dim = 0;  // dimension of the total image
  /// Source columns kept (complement of the common kernel), increasing.
  std::vector<std::size_t> kept_cols;
  /// Canonical basis of the total image, one column vector each.
  std::vector<BitVector> image_basis;
};

/// Reduced operator space: induced maps U/U0 -> V0 with U/U0 identified with
/// the non-pivot source coordinates of U0 and V0 coordinatised by its canonical basis.
Reduction reduce(const MatSubspace& s);

bool is_reduced(const MatSubspace& s);

/// Hat space for the stored basis (s_1..s_d): span of the n x d matrices
/// [s_1 x | ... | s_d x] for x over the standard basis.
MatSubspace hat(const MatSubspace& s);

/// Hat space relative to an explicit ordered list of operators.
MatSubspace hat_of(std::span<const BitMatrix> ordered, std::size_t rows, std::size_t cols);

/// S mod F2 y, as operators into the complement of y's pivot coordinate.
MatSubspace quotient_mod(const MatSubspace& s, const BitVector& y);

/// Matrix of the projection V -> V / F2 y used by quotient_mod, (n-1) x n.
BitMatrix quotient_projection(const BitVector& y);

MatSubspace sum(const MatSubspace& a, const MatSubspace& b);
MatSubspace intersect(const MatSubspace& a, const MatSubspace& b);
MatSubspace transpose_space(const MatSubspace& s);

/// Common kernel as a subspace of Mat_{p,1}.
MatSubspace common_kernel(const MatSubspace& s);

/// Sum of the column spaces as a subspace of Mat_{n,1}.
MatSubspace total_image(const MatSubspace& s);

/// P S R (left factor n x n, right factor p x p; both assumed invertible by callers that need orbits).
MatSubspace multiply(const BitMatrix& left, const MatSubspace& s, const BitMatrix& right);
AffineMatSpace multiply(const BitMatrix& left, const AffineMatSpace& a, const BitMatrix& right);

/// Flattened product left * unflatten(v) * right for an n x p operand.
Word multiply_flat(const BitMatrix& left, Word v, std::size_t rows, std::size_t cols, const BitMatrix& right);

/// Rank of a flattened n x p matrix.
std::size_t flat_rank(Word v, std::size_t rows, std::size_t cols) noexcept;

// ---------------------------------------------------------------- enumeration

/// All 2^dim elements of a subspace in Gray-code order, dim <= 30.
class ElementEnumerator {
 public:
  explicit ElementEnumerator(const MatSubspace& s);

  bool next();
  Word current_flat() const noexcept { return element_; }
  Word coords() const noexcept { return coords_; }
  BitMatrix current() const;

 private:
  MatSubspace space_;
  std::uint64_t step_ = 0;
  std::uint64_t total_;
  Word element_ = 0;
  Word coords_ = 0;
};

/// Calls f(element, coords) for every element in Gray-code order.
template <typename F>
void for_each_element(const MatSubspace& s, F&& f) {
  const auto basis = s.flat_basis();
  const std::uint64_t total = std::uint64_t{1} << basis.size();
  Word element = 0;
  Word coords = 0;
  f(element, coords);
  for (std::uint64_t k = 1; k < total; ++k) {
    const int j = std::countr_zero(k);
    element ^= basis[static_cast<std::size_t>(j)];
    coords ^= Word{1} << j;
    f(element, coords);
  }
}

/// Gaussian binomial [n choose k]_2.
std::uint64_t gaussian_binomial(std::size_t n, std::size_t k);

/// Every k-dimensional subspace of Mat_{n,p}, n * p <= 12, exactly once.
///
/// Subspaces are produced from their reduced echelon forms: pivot sets in
/// lexicographic order, then free entries as a counter. The position in that
/// sequence is the subspace index, which supports range sharding via seek().
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(std::size_t rows, std::size_t cols, std::size_t k);

  std::uint64_t total() const noexcept { return total_; }
  /// Positions the enumerator so that the next call to next() yields subspace `index`.
  void seek(std::uint64_t index);
  bool next();
  /// Index of the subspace last returned by next().
  std::uint64_t index() const noexcept { return index_ - 1; }
  const MatSubspace& current() const noexcept { return current_; }
  /// Flattened canonical basis of the current subspace (valid after next()).
  std::span<const Word> current_basis() const noexcept { return std::span<const Word>(rows_.data(), k_); }

 private:
  bool load_pivots();
  void build();

  std::size_t n_rows_, n_cols_, length_, k_;
  std::uint64_t total_;
  std::uint64_t index_ = 0;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::size_t>> free_positions_;  // per echelon row
  std::size_t free_count_ = 0;
  std::uint64_t free_value_ = 0;
  bool pivots_valid_ = false;
  bool started_block_ = false;
  std::vector<Word> rows_;
  MatSubspace current_;
};

}  // namespace rcf2
