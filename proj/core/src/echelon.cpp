#include "rcf2/echelon.hpp"

#include <algorithm>

#include "rcf2/error.hpp"

namespace rcf2 {

EchelonBasis::EchelonBasis(std::size_t length) : length_(length) {
  if (length > kWordBits) throw BoundError("echelon basis: ambient dimension at most 64");
}

bool EchelonBasis::insert(Word v, Word tag) {
  Word hit;
  while ((hit = v & pivots_) != 0) {
    const int b = std::countr_zero(hit);
    v ^= rows_[b];
    tag ^= tags_[b];
  }
  if (!v) return false;
  const int b = std::countr_zero(v);
  rows_[b] = v;
  tags_[b] = tag;
  pivots_ |= Word{1} << b;
  return true;
}

std::pair<Word, Word> EchelonBasis::reduce_tracked(Word v) const noexcept {
  Word tag = 0;
  Word hit;
  while ((hit = v & pivots_) != 0) {
    const int b = std::countr_zero(hit);
    v ^= rows_[b];
    tag ^= tags_[b];
  }
  return {v, tag};
}

std::vector<Word> EchelonBasis::canonical() const {
  std::array<Word, kWordBits> rows = rows_;
  // Back-substitute from the highest pivot down; rows[b] only has bits >= b.
  for (int b = static_cast<int>(kWordBits) - 1; b >= 0; --b) {
    if (!((pivots_ >> b) & 1U)) continue;
    Word lower = pivots_ & low_mask(static_cast<std::size_t>(b));
    while (lower) {
      const int a = std::countr_zero(lower);
      if ((rows[a] >> b) & 1U) rows[a] ^= rows[b];
      lower &= lower - 1;
    }
  }
  std::vector<Word> out;
  out.reserve(rank());
  Word p = pivots_;
  while (p) {
    out.push_back(rows[std::countr_zero(p)]);
    p &= p - 1;
  }
  return out;
}

std::vector<Word> EchelonBasis::annihilator() const {
  const std::vector<Word> rows = canonical();
  std::vector<Word> out;
  out.reserve(length_ - rows.size());
  for (std::size_t f = 0; f < length_; ++f) {
    const Word bit = Word{1} << f;
    if (pivots_ & bit) continue;
    Word w = bit;
    for (Word r : rows) {
      if (r & bit) w |= r & (~r + 1);
    }
    out.push_back(w);
  }
  return out;
}

std::vector<Word> canonical_basis(std::span<const Word> vectors, std::size_t length) {
  EchelonBasis e(length);
  for (Word v : vectors) e.insert(v);
  return e.canonical();
}

}  // namespace rcf2
