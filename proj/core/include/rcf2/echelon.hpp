#pragma once

// Incremental echelon bases of subspaces of F2^k, k <= 64, with vectors
// stored as single words. The pivot of a vector is its lowest set bit.

#include <array>
#include <bit>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rcf2/bit_matrix.hpp"

namespace rcf2 {

class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t length = kWordBits);

  std::size_t length() const noexcept { return length_; }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(std::popcount(pivots_)); }
  Word pivot_mask() const noexcept { return pivots_; }

  /// Adds v to the spanning set. `tag` is XOR-accumulated alongside the
  /// vector so callers can recover linear combinations of their inputs.
  /// Returns true when the rank grew.
  bool insert(Word v, Word tag = 0);

  /// Residual of v after elimination; zero iff v lies in the span.
  Word reduce(Word v) const noexcept {
    Word hit;
    while ((hit = v & pivots_) != 0) v ^= rows_[std::countr_zero(hit)];
    return v;
  }

  /// As reduce(), also returning the XOR of the tags of the rows used.
  std::pair<Word, Word> reduce_tracked(Word v) const noexcept;

  bool contains(Word v) const noexcept { return reduce(v) == 0; }

  /// Fully reduced echelon rows sorted by increasing pivot.
  std::vector<Word> canonical() const;

  /// Basis of {w : <c, w> = 0 for every c in the span}, inside F2^length.
  std::vector<Word> annihilator() const;

 private:
  std::size_t length_;
  Word pivots_ = 0;
  std::array<Word, kWordBits> rows_{};
  std::array<Word, kWordBits> tags_{};
};

/// Fully reduced echelon form of an arbitrary list of vectors.
std::vector<Word> canonical_basis(std::span<const Word> vectors, std::size_t length);

/// Residual of v against a canonical (fully reduced, pivot-sorted) basis.
inline Word reduce_canonical(std::span<const Word> basis, Word pivot_mask, Word v) noexcept {
  Word hit = v & pivot_mask;
  Word out = v;
  // Each canonical row is zero on every other row's pivot, so one pass suffices.
  for (Word row : basis) {
    if (hit & row & (~row + 1)) out ^= row;
  }
  return out;
}

}  // namespace rcf2
