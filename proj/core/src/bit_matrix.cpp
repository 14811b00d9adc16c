#include "rcf2/bit_matrix.hpp"

#include <array>
#include <bit>
#include <utility>

#include "rcf2/error.hpp"

namespace rcf2 {

namespace {

void check_cols(std::size_t cols) {
  if (cols > kWordBits) throw BoundError("matrix columns: at most 64 supported, got " + std::to_string(cols));
}

void check_length(std::size_t length) {
  if (length > kWordBits) throw BoundError("vector length: at most 64 supported, got " + std::to_string(length));
}

}  // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::size_t length, Word bits) : length_(length), bits_(bits & low_mask(length)) {
  check_length(length);
}

BitVector BitVector::unit(std::size_t length, std::size_t index) {
  if (index >= length) throw ShapeError("unit vector index out of range");
  return BitVector(length, Word{1} << index);
}

BitVector BitVector::from_string(std::string_view text) {
  BitVector v(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      v.bits_ |= Word{1} << i;
    } else if (text[i] != '0') {
      throw ArgumentError("bit string may only contain '0' and '1'");
    }
  }
  return v;
}

bool BitVector::get(std::size_t i) const {
  if (i >= length_) throw ShapeError("vector index out of range");
  return (bits_ >> i) & 1U;
}

void BitVector::set(std::size_t i, bool value) {
  if (i >= length_) throw ShapeError("vector index out of range");
  const Word bit = Word{1} << i;
  bits_ = value ? (bits_ | bit) : (bits_ & ~bit);
}

std::size_t BitVector::weight() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }

std::string BitVector::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if ((bits_ >> i) & 1U) s[i] = '1';
  }
  return s;
}

BitVector& BitVector::operator+=(const BitVector& other) {
  if (other.length_ != length_) throw ShapeError("vector length mismatch in addition");
  bits_ ^= other.bits_;
  return *this;
}

bool dot(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw ShapeError("vector length mismatch in dot product");
  return std::popcount(a.word() & b.word()) & 1;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows, 0), cols_(cols) { check_cols(cols); }

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i] = Word{1} << i;
  return m;
}

BitMatrix BitMatrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  if (i >= rows || j >= cols) throw ShapeError("unit matrix position out of range");
  BitMatrix m(rows, cols);
  m.rows_[i] = Word{1} << j;
  return m;
}

BitMatrix BitMatrix::from_rows(std::size_t cols, std::vector<Word> rows) {
  check_cols(cols);
  for (Word r : rows) {
    if (r & ~low_mask(cols)) throw ShapeError("row word has bits beyond the column count");
  }
  BitMatrix m;
  m.rows_ = std::move(rows);
  m.cols_ = cols;
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ShapeError("ragged rows in matrix literal");
    m.rows_[i] = BitVector::from_string(rows[i]).word();
  }
  return m;
}

BitMatrix BitMatrix::unflatten(std::size_t rows, std::size_t cols, Word bits) {
  if (rows * cols > kWordBits) throw BoundError("flattening: rows * cols must be at most 64");
  BitMatrix m(rows, cols);
  const Word mask = low_mask(cols);
  for (std::size_t i = 0; i < rows; ++i) m.rows_[i] = (bits >> (i * cols)) & mask;
  return m;
}

BitMatrix BitMatrix::from_columns(std::size_t rows, std::span<const BitVector> columns) {
  BitMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw ShapeError("column length does not match row count");
    for (std::size_t i = 0; i < rows; ++i) {
      if ((columns[j].word() >> i) & 1U) m.rows_[i] |= Word{1} << j;
    }
  }
  return m;
}

bool BitMatrix::get(std::size_t i, std::size_t j) const {
  if (i >= rows() || j >= cols_) throw ShapeError("matrix index out of range");
  return (rows_[i] >> j) & 1U;
}

void BitMatrix::set(std::size_t i, std::size_t j, bool value) {
  if (i >= rows() || j >= cols_) throw ShapeError("matrix index out of range");
  const Word bit = Word{1} << j;
  rows_[i] = value ? (rows_[i] | bit) : (rows_[i] & ~bit);
}

void BitMatrix::flip(std::size_t i, std::size_t j) {
  if (i >= rows() || j >= cols_) throw ShapeError("matrix index out of range");
  rows_[i] ^= Word{1} << j;
}

void BitMatrix::set_row(std::size_t i, Word bits) {
  if (i >= rows()) throw ShapeError("row index out of range");
  rows_[i] = bits & low_mask(cols_);
}

BitVector BitMatrix::row_vector(std::size_t i) const {
  if (i >= rows()) throw ShapeError("row index out of range");
  return BitVector(cols_, rows_[i]);
}

BitVector BitMatrix::column(std::size_t j) const {
  if (j >= cols_) throw ShapeError("column index out of range");
  Word bits = 0;
  for (std::size_t i = 0; i < rows(); ++i) bits |= ((rows_[i] >> j) & 1U) << i;
  return BitVector(rows(), bits);
}

Word BitMatrix::flatten() const {
  if (rows() * cols_ > kWordBits) throw BoundError("flattening: rows * cols must be at most 64");
  Word out = 0;
  for (std::size_t i = 0; i < rows(); ++i) out |= rows_[i] << (i * cols_);
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    Word r = rows_[i];
    while (r) {
      const int j = std::countr_zero(r);
      t.rows_[static_cast<std::size_t>(j)] |= Word{1} << i;
      r &= r - 1;
    }
  }
  return t;
}

bool BitMatrix::is_zero() const noexcept {
  for (Word r : rows_) {
    if (r) return false;
  }
  return true;
}

BitMatrix BitMatrix::block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const {
  if (row0 + rows > this->rows() || col0 + cols > cols_) throw ShapeError("block out of range");
  BitMatrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) b.rows_[i] = (rows_[row0 + i] >> col0) & low_mask(cols);
  return b;
}

std::string BitMatrix::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < rows(); ++i) {
    s += BitVector(cols_, rows_[i]).to_string();
    s += '\n';
  }
  return s;
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& other) {
  if (other.rows() != rows() || other.cols_ != cols_) throw ShapeError("matrix shape mismatch in addition");
  for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i] ^= other.rows_[i];
  return *this;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix shape mismatch in product");
  BitMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Word r = a.row(i);
    Word acc = 0;
    while (r) {
      acc ^= b.row(static_cast<std::size_t>(std::countr_zero(r)));
      r &= r - 1;
    }
    c.set_row(i, acc);
  }
  return c;
}

BitVector operator*(const BitMatrix& m, const BitVector& x) {
  if (m.cols() != x.size()) throw ShapeError("matrix-vector shape mismatch");
  Word out = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) out |= Word(std::popcount(m.row(i) & x.word()) & 1) << i;
  return BitVector(m.rows(), out);
}

// ---------------------------------------------------------------- elimination

RrefResult rref(const BitMatrix& m) {
  const std::size_t n = m.rows();
  // The row transform stores one n-bit word per row.
  if (n > kWordBits) throw BoundError("rref: at most 64 rows supported");
  std::vector<Word> rows(m.row_words().begin(), m.row_words().end());
  std::vector<Word> transform(n);
  for (std::size_t i = 0; i < n; ++i) transform[i] = Word{1} << i;

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < n; ++c) {
    const Word bit = Word{1} << c;
    std::size_t sel = r;
    while (sel < n && !(rows[sel] & bit)) ++sel;
    if (sel == n) continue;
    std::swap(rows[r], rows[sel]);
    std::swap(transform[r], transform[sel]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != r && (rows[i] & bit)) {
        rows[i] ^= rows[r];
        transform[i] ^= transform[r];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {BitMatrix::from_rows(m.cols(), std::move(rows)), std::move(pivots),
          BitMatrix::from_rows(n, std::move(transform))};
}

std::size_t rank(const BitMatrix& m) {
  std::array<Word, kWordBits> pivot_rows{};
  Word pivots = 0;
  std::size_t r = 0;
  for (Word v : m.row_words()) {
    Word hit;
    while ((hit = v & pivots) != 0) v ^= pivot_rows[std::countr_zero(hit)];
    if (v) {
      pivot_rows[std::countr_zero(v)] = v;
      pivots |= v & (~v + 1);
      ++r;
    }
  }
  return r;
}

std::vector<BitVector> nullspace(const BitMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<BitVector> basis;
  Word pivot_mask = 0;
  for (std::size_t c : r.pivot_cols) pivot_mask |= Word{1} << c;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (pivot_mask & (Word{1} << f)) continue;
    Word v = Word{1} << f;
    for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) {
      if ((r.reduced.row(k) >> f) & 1U) v |= Word{1} << r.pivot_cols[k];
    }
    basis.emplace_back(m.cols(), v);
  }
  return basis;
}

std::vector<BitVector> left_kernel(const BitMatrix& m) { return nullspace(m.transpose()); }

std::optional<BitMatrix> inverse(const BitMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse of a non-square matrix");
  RrefResult r = rref(m);
  if (r.pivot_cols.size() != m.rows()) return std::nullopt;
  return std::move(r.row_transform);
}

// ---------------------------------------------------------------- GL_n

std::uint64_t gl_order(std::size_t n) {
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < n; ++i) order *= (std::uint64_t{1} << n) - (std::uint64_t{1} << i);
  return order;
}

GlEnumerator::GlEnumerator(std::size_t n) : n_(n), rows_(n, 0), spans_(n + 1, 0), current_(n, n) {
  if (n < 1 || n > 5) throw BoundError("enumerate_gl: n must lie in [1, 5], got " + std::to_string(n));
  spans_[0] = 1U;  // {0}
}

namespace {

std::uint32_t extend_span(std::uint32_t span, Word v) {
  std::uint32_t out = span;
  std::uint32_t s = span;
  while (s) {
    const int u = std::countr_zero(s);
    out |= std::uint32_t{1} << (static_cast<Word>(u) ^ v);
    s &= s - 1;
  }
  return out;
}

}  // namespace

void GlEnumerator::fill_from(std::size_t level) {
  for (std::size_t i = level; i < n_; ++i) {
    Word w = 1;
    while ((spans_[i] >> w) & 1U) ++w;
    rows_[i] = w;
    spans_[i + 1] = extend_span(spans_[i], w);
  }
}

bool GlEnumerator::next() {
  const Word limit = Word{1} << n_;
  if (!started_) {
    started_ = true;
    fill_from(0);
  } else {
    std::size_t i = n_;
    bool advanced = false;
    while (i-- > 0) {
      Word w = rows_[i] + 1;
      while (w < limit && ((spans_[i] >> w) & 1U)) ++w;
      if (w < limit) {
        rows_[i] = w;
        spans_[i + 1] = extend_span(spans_[i], w);
        fill_from(i + 1);
        advanced = true;
        break;
      }
    }
    if (!advanced) return false;
  }
  for (std::size_t i = 0; i < n_; ++i) current_.set_row(i, rows_[i]);
  return true;
}

const std::vector<BitMatrix>& gl_group(std::size_t n) {
  static const std::array<std::vector<BitMatrix>, 5> cache = [] {
    std::array<std::vector<BitMatrix>, 5> c;
    for (std::size_t k = 1; k <= 4; ++k) {
      GlEnumerator e(k);
      c[k].reserve(gl_order(k));
      while (e.next()) c[k].push_back(e.current());
    }
    return c;
  }();
  if (n < 1 || n > 4) throw BoundError("gl_group: cached groups exist for 1 <= n <= 4, got " + std::to_string(n));
  return cache[n];
}

}  // namespace rcf2
