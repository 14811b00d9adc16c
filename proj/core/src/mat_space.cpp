#include "rcf2/mat_space.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "rcf2/echelon.hpp"
#include "rcf2/error.hpp"

namespace rcf2 {

namespace {

void check_ambient(std::size_t rows, std::size_t cols) {
  if (rows * cols > kWordBits) {
    throw BoundError("ambient space Mat_{" + std::to_string(rows) + "," + std::to_string(cols) +
                     "} exceeds 64 coordinates");
  }
}

Word pivots_of(std::span<const Word> basis) {
  Word p = 0;
  for (Word r : basis) p |= r & (~r + 1);
  return p;
}

Word transpose_flat(Word v, std::size_t rows, std::size_t cols) {
  Word out = 0;
  while (v) {
    const auto k = static_cast<std::size_t>(std::countr_zero(v));
    const std::size_t i = k / cols;
    const std::size_t j = k % cols;
    out |= Word{1} << (j * rows + i);
    v &= v - 1;
  }
  return out;
}

/// Places an r x c flattened block at (row0, col0) inside an R x C flattening.
Word embed_flat(Word v, std::size_t r, std::size_t c, std::size_t big_cols, std::size_t row0, std::size_t col0) {
  Word out = 0;
  const Word mask = low_mask(c);
  for (std::size_t i = 0; i < r; ++i) {
    const Word row = (v >> (i * c)) & mask;
    out |= row << ((row0 + i) * big_cols + col0);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- MatSubspace

MatSubspace::MatSubspace(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) { check_ambient(rows, cols); }

MatSubspace MatSubspace::full(std::size_t rows, std::size_t cols) {
  check_ambient(rows, cols);
  std::vector<Word> basis(rows * cols);
  for (std::size_t k = 0; k < basis.size(); ++k) basis[k] = Word{1} << k;
  return from_canonical(rows, cols, std::move(basis));
}

MatSubspace MatSubspace::from_flat(std::size_t rows, std::size_t cols, std::span<const Word> vectors) {
  check_ambient(rows, cols);
  const Word mask = low_mask(rows * cols);
  for (Word v : vectors) {
    if (v & ~mask) throw ShapeError("flattened vector has bits outside the ambient space");
  }
  return from_canonical(rows, cols, canonical_basis(vectors, rows * cols));
}

MatSubspace MatSubspace::span(std::span<const BitMatrix> mats, std::size_t rows, std::size_t cols) {
  check_ambient(rows, cols);
  std::vector<Word> flat;
  flat.reserve(mats.size());
  for (const BitMatrix& m : mats) {
    if (m.rows() != rows || m.cols() != cols) {
      throw ShapeError("span: expected " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix, got " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    flat.push_back(m.flatten());
  }
  return from_canonical(rows, cols, canonical_basis(flat, rows * cols));
}

MatSubspace MatSubspace::from_canonical(std::size_t rows, std::size_t cols, std::vector<Word> basis) {
  check_ambient(rows, cols);
  MatSubspace s;
  s.rows_ = rows;
  s.cols_ = cols;
  s.pivots_ = pivots_of(basis);
  s.basis_ = std::move(basis);
  return s;
}

std::vector<BitMatrix> MatSubspace::basis() const {
  std::vector<BitMatrix> out;
  out.reserve(basis_.size());
  for (Word v : basis_) out.push_back(BitMatrix::unflatten(rows_, cols_, v));
  return out;
}

BitMatrix MatSubspace::basis_matrix(std::size_t j) const {
  if (j >= basis_.size()) throw ShapeError("basis index out of range");
  return BitMatrix::unflatten(rows_, cols_, basis_[j]);
}

bool MatSubspace::contains(const BitMatrix& m) const {
  if (m.rows() != rows_ || m.cols() != cols_) throw ShapeError("membership test: shape mismatch");
  return contains_flat(m.flatten());
}

BitMatrix MatSubspace::element(Word coords) const {
  if (coords & ~low_mask(basis_.size())) throw ShapeError("coordinate vector longer than the dimension");
  return BitMatrix::unflatten(rows_, cols_, element_flat(coords));
}

Word MatSubspace::coordinates_flat(Word v) const {
  Word coords = 0;
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    const Word row = basis_[j];
    if (v & row & (~row + 1)) coords |= Word{1} << j;
  }
  if (element_flat(coords) != v) throw ArgumentError("coordinates requested for a matrix outside the subspace");
  return coords;
}

bool MatSubspace::is_subspace_of(const MatSubspace& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  return std::all_of(basis_.begin(), basis_.end(), [&](Word v) { return other.contains_flat(v); });
}

std::size_t MatSubspaceHash::operator()(const MatSubspace& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ (s.rows() * 131 + s.cols());
  for (Word w : s.flat_basis()) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

// ---------------------------------------------------------------- AffineMatSpace

AffineMatSpace::AffineMatSpace(const BitMatrix& offset, MatSubspace direction) : direction_(std::move(direction)) {
  if (offset.rows() != direction_.rows() || offset.cols() != direction_.cols()) {
    throw ShapeError("affine space: offset shape differs from direction shape");
  }
  offset_ = direction_.reduce_flat(offset.flatten());
}

AffineMatSpace AffineMatSpace::from_flat(Word offset, MatSubspace direction) {
  if (offset & ~low_mask(direction.ambient_dim())) throw ShapeError("affine offset outside the ambient space");
  AffineMatSpace a;
  a.offset_ = direction.reduce_flat(offset);
  a.direction_ = std::move(direction);
  return a;
}

BitMatrix AffineMatSpace::offset() const { return BitMatrix::unflatten(rows(), cols(), offset_); }

bool AffineMatSpace::contains(const BitMatrix& m) const {
  if (m.rows() != rows() || m.cols() != cols()) throw ShapeError("membership test: shape mismatch");
  return contains_flat(m.flatten());
}

std::size_t AffineMatSpaceHash::operator()(const AffineMatSpace& a) const noexcept {
  const std::uint64_t h = MatSubspaceHash{}(a.direction());
  return static_cast<std::size_t>((h ^ (a.offset_flat() * 0x94d049bb133111ebULL)) * 0xbf58476d1ce4e5b9ULL);
}

// ---------------------------------------------------------------- constructions

MatSubspace orthogonal(const MatSubspace& s) {
  EchelonBasis e(s.ambient_dim());
  for (Word v : s.flat_basis()) e.insert(v);
  std::vector<Word> perp;
  for (Word w : e.annihilator()) perp.push_back(transpose_flat(w, s.rows(), s.cols()));
  return MatSubspace::from_flat(s.cols(), s.rows(), perp);
}

MatSubspace vee(const MatSubspace& a, const MatSubspace& b) {
  const std::size_t m = a.rows(), p = a.cols(), n = b.rows(), q = b.cols();
  const std::size_t rows = m + n, cols = p + q;
  check_ambient(rows, cols);
  std::vector<Word> gens;
  for (Word v : a.flat_basis()) gens.push_back(embed_flat(v, m, p, cols, 0, 0));
  for (Word v : b.flat_basis()) gens.push_back(embed_flat(v, n, q, cols, m, p));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < q; ++j) gens.push_back(Word{1} << (i * cols + p + j));
  }
  return MatSubspace::from_flat(rows, cols, gens);
}

MatSubspace coprod(const MatSubspace& a, const MatSubspace& b) {
  if (a.rows() != b.rows()) throw ShapeError("coprod: row counts differ");
  const std::size_t n = a.rows(), cols = a.cols() + b.cols();
  check_ambient(n, cols);
  std::vector<Word> gens;
  for (Word v : a.flat_basis()) gens.push_back(embed_flat(v, n, a.cols(), cols, 0, 0));
  for (Word v : b.flat_basis()) gens.push_back(embed_flat(v, n, b.cols(), cols, 0, a.cols()));
  return MatSubspace::from_flat(n, cols, gens);
}

namespace {

/// Column vector s x for a flattened n x p matrix s.
Word apply_flat(Word s, std::size_t rows, std::size_t cols, Word x) {
  Word out = 0;
  const Word mask = low_mask(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    out |= Word(std::popcount((s >> (i * cols)) & mask & x) & 1) << i;
  }
  return out;
}

}  // namespace

MatSubspace apply(const MatSubspace& s, const BitVector& x) {
  if (x.size() != s.cols()) throw ShapeError("apply: vector length differs from column count");
  std::vector<Word> images;
  for (Word v : s.flat_basis()) images.push_back(apply_flat(v, s.rows(), s.cols(), x.word()));
  return MatSubspace::from_flat(s.rows(), 1, images);
}

MatSubspace common_kernel(const MatSubspace& s) {
  EchelonBasis rows(s.cols());
  const Word mask = low_mask(s.cols());
  for (Word v : s.flat_basis()) {
    for (std::size_t i = 0; i < s.rows(); ++i) rows.insert((v >> (i * s.cols())) & mask);
  }
  return MatSubspace::from_flat(s.cols(), 1, rows.annihilator());
}

MatSubspace total_image(const MatSubspace& s) {
  std::vector<Word> cols;
  for (Word v : s.flat_basis()) {
    for (std::size_t j = 0; j < s.cols(); ++j) cols.push_back(apply_flat(v, s.rows(), s.cols(), Word{1} << j));
  }
  return MatSubspace::from_flat(s.rows(), 1, cols);
}

Reduction reduce(const MatSubspace& s) {
  const MatSubspace kernel = common_kernel(s);
  const MatSubspace image = total_image(s);
  Reduction out;
  out.u0_dim = kernel.dim();
  out.v0_dim = image.dim();
  for (std::size_t j = 0; j < s.cols(); ++j) {
    if (!((kernel.pivot_mask() >> j) & 1U)) out.kept_cols.push_back(j);
  }
  std::vector<std::size_t> pivot_rows;
  for (Word b : image.flat_basis()) {
    out.image_basis.emplace_back(s.rows(), b);
    pivot_rows.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  }
  const std::size_t r = pivot_rows.size(), c = out.kept_cols.size();
  std::vector<Word> gens;
  for (Word v : s.flat_basis()) {
    Word g = 0;
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < c; ++b) {
        if ((v >> (pivot_rows[a] * s.cols() + out.kept_cols[b])) & 1U) g |= Word{1} << (a * c + b);
      }
    }
    gens.push_back(g);
  }
  out.reduced = MatSubspace::from_flat(r, c, gens);
  return out;
}

bool is_reduced(const MatSubspace& s) {
  return common_kernel(s).dim() == 0 && total_image(s).dim() == s.rows();
}

MatSubspace hat_of(std::span<const BitMatrix> ordered, std::size_t rows, std::size_t cols) {
  const std::size_t d = ordered.size();
  check_ambient(rows, d);
  std::vector<Word> flat;
  for (const BitMatrix& m : ordered) {
    if (m.rows() != rows || m.cols() != cols) throw ShapeError("hat: operator shape mismatch");
    flat.push_back(m.flatten());
  }
  std::vector<Word> gens;
  for (std::size_t x = 0; x < cols; ++x) {
    Word g = 0;
    for (std::size_t k = 0; k < d; ++k) {
      const Word col = apply_flat(flat[k], rows, cols, Word{1} << x);
      for (std::size_t i = 0; i < rows; ++i) {
        if ((col >> i) & 1U) g |= Word{1} << (i * d + k);
      }
    }
    gens.push_back(g);
  }
  return MatSubspace::from_flat(rows, d, gens);
}

MatSubspace hat(const MatSubspace& s) {
  const std::vector<BitMatrix> b = s.basis();
  return hat_of(b, s.rows(), s.cols());
}

BitMatrix quotient_projection(const BitVector& y) {
  if (y.is_zero()) throw ArgumentError("quotient_mod: y must be non-zero");
  const std::size_t n = y.size();
  const auto i0 = static_cast<std::size_t>(std::countr_zero(y.word()));
  BitMatrix pi(n - 1, n);
  std::size_t t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == i0) continue;
    Word row = Word{1} << i;
    if (y.get(i)) row |= Word{1} << i0;
    pi.set_row(t++, row);
  }
  return pi;
}

MatSubspace quotient_mod(const MatSubspace& s, const BitVector& y) {
  if (y.size() != s.rows()) throw ShapeError("quotient_mod: vector length differs from row count");
  const BitMatrix pi = quotient_projection(y);
  std::vector<Word> gens;
  for (Word v : s.flat_basis()) {
    gens.push_back((pi * BitMatrix::unflatten(s.rows(), s.cols(), v)).flatten());
  }
  return MatSubspace::from_flat(s.rows() - 1, s.cols(), gens);
}

MatSubspace sum(const MatSubspace& a, const MatSubspace& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("sum: shape mismatch");
  std::vector<Word> gens(a.flat_basis().begin(), a.flat_basis().end());
  gens.insert(gens.end(), b.flat_basis().begin(), b.flat_basis().end());
  return MatSubspace::from_flat(a.rows(), a.cols(), gens);
}

MatSubspace intersect(const MatSubspace& a, const MatSubspace& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("intersect: shape mismatch");
  return orthogonal(sum(orthogonal(a), orthogonal(b)));
}

MatSubspace transpose_space(const MatSubspace& s) {
  std::vector<Word> gens;
  for (Word v : s.flat_basis()) gens.push_back(transpose_flat(v, s.rows(), s.cols()));
  return MatSubspace::from_flat(s.cols(), s.rows(), gens);
}

Word multiply_flat(const BitMatrix& left, Word v, std::size_t rows, std::size_t cols, const BitMatrix& right) {
  std::array<Word, kWordBits> in{};
  const Word mask = low_mask(cols);
  for (std::size_t i = 0; i < rows; ++i) in[i] = (v >> (i * cols)) & mask;
  const std::size_t out_rows = left.rows();
  const std::size_t out_cols = right.cols();
  Word out = 0;
  for (std::size_t i = 0; i < out_rows; ++i) {
    Word sel = left.row(i);
    Word acc = 0;
    while (sel) {
      acc ^= in[static_cast<std::size_t>(std::countr_zero(sel))];
      sel &= sel - 1;
    }
    Word res = 0;
    while (acc) {
      res ^= right.row(static_cast<std::size_t>(std::countr_zero(acc)));
      acc &= acc - 1;
    }
    out |= res << (i * out_cols);
  }
  return out;
}

MatSubspace multiply(const BitMatrix& left, const MatSubspace& s, const BitMatrix& right) {
  if (left.cols() != s.rows() || right.rows() != s.cols()) throw ShapeError("multiply: shape mismatch");
  std::vector<Word> gens;
  gens.reserve(s.dim());
  for (Word v : s.flat_basis()) gens.push_back(multiply_flat(left, v, s.rows(), s.cols(), right));
  return MatSubspace::from_flat(left.rows(), right.cols(), gens);
}

AffineMatSpace multiply(const BitMatrix& left, const AffineMatSpace& a, const BitMatrix& right) {
  MatSubspace dir = multiply(left, a.direction(), right);
  const Word off = multiply_flat(left, a.offset_flat(), a.rows(), a.cols(), right);
  return AffineMatSpace::from_flat(off, std::move(dir));
}

std::size_t flat_rank(Word v, std::size_t rows, std::size_t cols) noexcept {
  std::array<Word, kWordBits> pivot_rows;
  Word pivots = 0;
  std::size_t r = 0;
  const Word mask = low_mask(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Word row = (v >> (i * cols)) & mask;
    Word hit;
    while ((hit = row & pivots) != 0) row ^= pivot_rows[std::countr_zero(hit)];
    if (row) {
      pivot_rows[std::countr_zero(row)] = row;
      pivots |= row & (~row + 1);
      ++r;
    }
  }
  return r;
}

// ---------------------------------------------------------------- enumeration

ElementEnumerator::ElementEnumerator(const MatSubspace& s) : space_(s), total_(0) {
  if (s.dim() > 30) throw BoundError("enumerate_elements: dim must be at most 30, got " + std::to_string(s.dim()));
  total_ = std::uint64_t{1} << s.dim();
}

bool ElementEnumerator::next() {
  if (step_ >= total_) return false;
  if (step_ > 0) {
    const int j = std::countr_zero(step_);
    element_ ^= space_.flat_basis()[static_cast<std::size_t>(j)];
    coords_ ^= Word{1} << j;
  }
  ++step_;
  return true;
}

BitMatrix ElementEnumerator::current() const {
  return BitMatrix::unflatten(space_.rows(), space_.cols(), element_);
}

std::uint64_t gaussian_binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  // G(m, j) = G(m-1, j-1) + 2^j G(m-1, j)
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    for (std::size_t j = std::min(m, k); j >= 1; --j) row[j] = row[j - 1] + (std::uint64_t{1} << j) * row[j];
  }
  return row[k];
}

SubspaceEnumerator::SubspaceEnumerator(std::size_t rows, std::size_t cols, std::size_t k)
    : n_rows_(rows), n_cols_(cols), length_(rows * cols), k_(k), total_(0) {
  if (length_ > 12) {
    throw BoundError("enumerate_subspaces: ambient n*p must be at most 12, got " + std::to_string(length_));
  }
  if (k > length_) throw ArgumentError("enumerate_subspaces: k exceeds the ambient dimension");
  total_ = gaussian_binomial(length_, k);
  rows_.assign(k, 0);
  current_ = MatSubspace(rows, cols);
  seek(0);
}

bool SubspaceEnumerator::load_pivots() {
  Word pivot_set = 0;
  for (std::size_t c : pivots_) pivot_set |= Word{1} << c;
  free_positions_.assign(k_, {});
  free_count_ = 0;
  for (std::size_t r = 0; r < k_; ++r) {
    for (std::size_t q = pivots_[r] + 1; q < length_; ++q) {
      if (!((pivot_set >> q) & 1U)) {
        free_positions_[r].push_back(q);
        ++free_count_;
      }
    }
  }
  return true;
}

namespace {

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i-- > 0) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

void SubspaceEnumerator::seek(std::uint64_t index) {
  index_ = index;
  pivots_.resize(k_);
  for (std::size_t r = 0; r < k_; ++r) pivots_[r] = r;
  pivots_valid_ = true;
  load_pivots();
  std::uint64_t base = 0;
  while (true) {
    const std::uint64_t block = std::uint64_t{1} << free_count_;
    if (index < base + block) {
      // Position so that next() produces free value (index - base).
      free_value_ = index - base;
      break;
    }
    base += block;
    if (!next_combination(pivots_, length_)) {
      pivots_valid_ = false;
      break;
    }
    load_pivots();
  }
  started_block_ = false;
}

void SubspaceEnumerator::build() {
  std::uint64_t v = free_value_;
  for (std::size_t r = 0; r < k_; ++r) {
    Word row = Word{1} << pivots_[r];
    for (std::size_t q : free_positions_[r]) {
      if (v & 1U) row |= Word{1} << q;
      v >>= 1;
    }
    rows_[r] = row;
  }
  current_.basis_.assign(rows_.begin(), rows_.end());
  Word p = 0;
  for (std::size_t c : pivots_) p |= Word{1} << c;
  current_.pivots_ = p;
}

bool SubspaceEnumerator::next() {
  if (!pivots_valid_ || index_ >= total_) return false;
  if (started_block_) {
    ++free_value_;
    if (free_value_ >> free_count_) {
      if (!next_combination(pivots_, length_)) {
        pivots_valid_ = false;
        return false;
      }
      load_pivots();
      free_value_ = 0;
    }
  }
  started_block_ = true;
  build();
  ++index_;
  return true;
}

}  // namespace rcf2
