#include "rcf2/range_compat.hpp"

#include <array>
#include <sstream>

#include "rcf2/echelon.hpp"
#include "rcf2/error.hpp"
#include "rcf2/text_format.hpp"

namespace rcf2 {

namespace {

constexpr std::size_t kMaxRcDim = 14;
constexpr std::size_t kMaxCheckDim = 20;

void check_rc_bounds(const MatSubspace& s) {
  if (s.dim() > kMaxRcDim) {
    throw BoundError("rc_space: dim S must be at most 14, got " + std::to_string(s.dim()));
  }
  if (s.rows() * s.dim() > kWordBits) {
    throw BoundError("rc_space: n * dim S must be at most 64, got " + std::to_string(s.rows() * s.dim()));
  }
}

/// Basis of {k : k^T s = 0} for a flattened n x p matrix; returns the count written to `out`.
std::size_t left_kernel_flat(Word s, std::size_t n, std::size_t p, Word* out) noexcept {
  std::array<Word, kWordBits> prow;
  std::array<Word, kWordBits> ptrack;
  Word pivots = 0;
  std::size_t count = 0;
  const Word mask = low_mask(p);
  for (std::size_t i = 0; i < n; ++i) {
    Word r = (s >> (i * p)) & mask;
    Word t = Word{1} << i;
    Word hit;
    while ((hit = r & pivots) != 0) {
      const int b = std::countr_zero(hit);
      r ^= prow[b];
      t ^= ptrack[b];
    }
    if (!r) {
      out[count++] = t;
    } else {
      const int b = std::countr_zero(r);
      prow[b] = r;
      ptrack[b] = t;
      pivots |= Word{1} << b;
    }
  }
  return count;
}

/// Flattened outer product k (x) c inside Mat_{n,d}.
Word outer(Word k, Word c, std::size_t d) noexcept {
  Word out = 0;
  while (k) {
    out |= c << (static_cast<std::size_t>(std::countr_zero(k)) * d);
    k &= k - 1;
  }
  return out;
}

/// Feeds every constraint k^T G c(s) = 0 to `sink` until it returns false.
template <typename Sink>
void for_each_rc_constraint(const MatSubspace& s, Sink&& sink) {
  const std::size_t n = s.rows(), p = s.cols(), d = s.dim();
  const auto basis = s.flat_basis();
  const std::uint64_t total = std::uint64_t{1} << d;
  std::array<Word, kWordBits> kernel;
  Word element = 0;
  Word coords = 0;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int j = std::countr_zero(step);
    element ^= basis[static_cast<std::size_t>(j)];
    coords ^= Word{1} << j;
    const std::size_t m = left_kernel_flat(element, n, p, kernel.data());
    for (std::size_t t = 0; t < m; ++t) {
      if (!sink(outer(kernel[t], coords, d))) return;
    }
  }
}

/// Column vector s x of a flattened n x p matrix.
Word apply_flat(Word s, std::size_t n, std::size_t p, Word x) noexcept {
  Word out = 0;
  const Word mask = low_mask(p);
  for (std::size_t i = 0; i < n; ++i) out |= Word(std::popcount((s >> (i * p)) & mask & x) & 1) << i;
  return out;
}

bool in_column_space(Word s, std::size_t n, std::size_t p, Word col) noexcept {
  // Eliminate on the augmented rows [s | col]; col is outside the column space
  // iff some row reduces to exactly the augmented bit.
  std::array<Word, kWordBits> prow;
  Word pivots = 0;
  const Word mask = low_mask(p);
  const Word aug = Word{1} << p;
  for (std::size_t i = 0; i < n; ++i) {
    Word r = ((s >> (i * p)) & mask) | (((col >> i) & 1U) ? aug : 0);
    Word hit;
    while ((hit = r & pivots & mask) != 0) r ^= prow[std::countr_zero(hit)];
    if (r == aug) return false;
    if (r & mask) {
      const int b = std::countr_zero(r);
      prow[b] = r;
      pivots |= Word{1} << b;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- MapOnSpace

MapOnSpace::MapOnSpace(MatSubspace domain, BitMatrix coeffs) : domain_(std::move(domain)), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != domain_.rows() || coeffs_.cols() != domain_.dim()) {
    throw ShapeError("map coefficients must be n x dim(domain)");
  }
}

MapOnSpace MapOnSpace::from_images(MatSubspace domain, const std::vector<BitVector>& images) {
  if (images.size() != domain.dim()) throw ShapeError("map needs one image per basis element");
  const std::size_t n = domain.rows();
  BitMatrix coeffs = BitMatrix::from_columns(n, images);
  return MapOnSpace(std::move(domain), std::move(coeffs));
}

MapOnSpace MapOnSpace::from_flat(MatSubspace domain, Word coeffs) {
  const std::size_t n = domain.rows(), d = domain.dim();
  BitMatrix g = BitMatrix::unflatten(n, d, coeffs);
  return MapOnSpace(std::move(domain), std::move(g));
}

MapOnSpace MapOnSpace::from_formula(MatSubspace domain, const std::function<BitVector(const BitMatrix&)>& formula) {
  std::vector<BitVector> images;
  for (const BitMatrix& b : domain.basis()) {
    BitVector v = formula(b);
    if (v.size() != domain.rows()) throw ShapeError("formula image has the wrong length");
    images.push_back(v);
  }
  return from_images(std::move(domain), images);
}

MapOnSpace MapOnSpace::zero(MatSubspace domain) {
  const std::size_t n = domain.rows(), d = domain.dim();
  return MapOnSpace(std::move(domain), BitMatrix(n, d));
}

MapOnSpace MapOnSpace::local(MatSubspace domain, const BitVector& x) {
  if (x.size() != domain.cols()) throw ShapeError("local map: vector length differs from column count");
  std::vector<BitVector> images;
  for (Word b : domain.flat_basis()) images.emplace_back(domain.rows(), apply_flat(b, domain.rows(), domain.cols(), x.word()));
  return from_images(std::move(domain), images);
}

BitVector MapOnSpace::at_coords(Word coords) const {
  if (coords & ~low_mask(domain_.dim())) throw ShapeError("coordinate vector longer than the dimension");
  Word out = 0;
  for (std::size_t i = 0; i < coeffs_.rows(); ++i) out |= Word(std::popcount(coeffs_.row(i) & coords) & 1) << i;
  return BitVector(coeffs_.rows(), out);
}

BitVector MapOnSpace::operator()(const BitMatrix& s) const {
  if (s.rows() != domain_.rows() || s.cols() != domain_.cols()) throw ShapeError("map argument: shape mismatch");
  return at_coords(domain_.coordinates_flat(s.flatten()));
}

// ---------------------------------------------------------------- spaces of maps

MatSubspace rc_space(const MatSubspace& s) {
  check_rc_bounds(s);
  const std::size_t n = s.rows(), d = s.dim();
  EchelonBasis constraints(n * d);
  for_each_rc_constraint(s, [&](Word c) {
    constraints.insert(c);
    return true;
  });
  return MatSubspace::from_flat(n, d, constraints.annihilator());
}

MatSubspace loc_space(const MatSubspace& s) {
  const std::size_t n = s.rows(), p = s.cols(), d = s.dim();
  if (n * d > kWordBits) throw BoundError("loc_space: n * dim S must be at most 64");
  std::vector<Word> gens;
  for (std::size_t x = 0; x < p; ++x) {
    Word g = 0;
    for (std::size_t k = 0; k < d; ++k) {
      const Word col = apply_flat(s.flat_basis()[k], n, p, Word{1} << x);
      for (std::size_t i = 0; i < n; ++i) {
        if ((col >> i) & 1U) g |= Word{1} << (i * d + k);
      }
    }
    gens.push_back(g);
  }
  return MatSubspace::from_flat(n, d, gens);
}

std::size_t rc_defect(const MatSubspace& s) {
  check_rc_bounds(s);
  const std::size_t nd = s.rows() * s.dim();
  const std::size_t loc_dim = loc_space(s).dim();
  const std::size_t target = nd - loc_dim;  // constraint rank at which rc = loc
  EchelonBasis constraints(nd);
  if (target == 0) return 0;
  for_each_rc_constraint(s, [&](Word c) {
    constraints.insert(c);
    return constraints.rank() < target;
  });
  return nd - constraints.rank() - loc_dim;
}

RcAnalysis analyze_rc(const MatSubspace& s) {
  RcAnalysis a;
  a.rc = rc_space(s);
  a.loc = loc_space(s);
  a.defect = a.rc.dim() - a.loc.dim();
  return a;
}

bool is_range_compatible(const MatSubspace& s, const MapOnSpace& f) {
  if (!(f.domain() == s)) throw ArgumentError("is_range_compatible: map domain differs from S");
  if (s.dim() > kMaxCheckDim) throw BoundError("is_range_compatible: dim S must be at most 20");
  const std::size_t n = s.rows(), p = s.cols();
  std::vector<Word> coeff_rows(f.coeffs().row_words().begin(), f.coeffs().row_words().end());
  bool ok = true;
  for_each_element(s, [&](Word element, Word coords) {
    if (!ok) return;
    Word image = 0;
    for (std::size_t i = 0; i < n; ++i) image |= Word(std::popcount(coeff_rows[i] & coords) & 1) << i;
    if (image && !in_column_space(element, n, p, image)) ok = false;
  });
  return ok;
}

std::optional<BitVector> is_local(const MatSubspace& s, const MapOnSpace& f) {
  if (!(f.domain() == s)) throw ArgumentError("is_local: map domain differs from S");
  const std::size_t n = s.rows(), p = s.cols();
  if (p + 1 > kWordBits) throw BoundError("is_local: at most 63 columns");
  // Equations (row i of s_j) . x = F(s_j)_i, stored as [coefficients | rhs << p].
  EchelonBasis eqs(p + 1);
  const Word rhs_bit = Word{1} << p;
  const Word mask = low_mask(p);
  for (std::size_t j = 0; j < s.dim(); ++j) {
    const Word b = s.flat_basis()[j];
    for (std::size_t i = 0; i < n; ++i) {
      const Word row = (b >> (i * p)) & mask;
      const Word rhs = f.coeffs().get(i, j) ? rhs_bit : 0;
      if ((row | rhs) == 0) continue;
      eqs.insert(row | rhs);
    }
  }
  if (eqs.pivot_mask() & rhs_bit) return std::nullopt;
  Word x = 0;
  for (Word r : eqs.canonical()) {
    if (r & rhs_bit) x |= r & (~r + 1);
  }
  return BitVector(p, x);
}

Word normalize_modulo_local(const MatSubspace& s, Word coeffs) { return loc_space(s).reduce_flat(coeffs); }

std::optional<MapOnSpace> witness_nonlocal(const MatSubspace& s) {
  const MatSubspace rc = rc_space(s);
  const MatSubspace loc = loc_space(s);
  for (Word v : rc.flat_basis()) {
    const Word r = loc.reduce_flat(v);
    if (r) return MapOnSpace::from_flat(s, r);
  }
  return std::nullopt;
}

std::optional<MapOnSpace> project_map(const MatSubspace& s, const MapOnSpace& f, const BitVector& y) {
  if (!(f.domain() == s)) throw ArgumentError("project_map: map domain differs from S");
  if (s.dim() > kWordBits) throw BoundError("project_map: dimension too large");
  const MatSubspace target = quotient_mod(s, y);
  const BitMatrix pi = quotient_projection(y);
  const BitMatrix id = BitMatrix::identity(s.cols());
  EchelonBasis images(target.ambient_dim());
  for (std::size_t j = 0; j < s.dim(); ++j) {
    const Word img = multiply_flat(pi, s.flat_basis()[j], s.rows(), s.cols(), id);
    const auto [residual, tag] = images.reduce_tracked(img);
    if (residual == 0) {
      // s_j + (combination tag) maps to zero under pi; F must do the same.
      const Word combo = tag ^ (Word{1} << j);
      if (!(pi * f.at_coords(combo)).is_zero()) return std::nullopt;
    } else {
      images.insert(img, Word{1} << j);
    }
  }
  std::vector<BitVector> out;
  for (Word t : target.flat_basis()) {
    const auto [residual, combo] = images.reduce_tracked(t);
    if (residual != 0) throw Error("project_map: quotient basis element not reached");
    out.push_back(pi * f.at_coords(combo));
  }
  return MapOnSpace::from_images(target, out);
}

std::string emit_map(const MapOnSpace& f) {
  std::ostringstream out;
  out << "maponspace " << f.target_dim() << ' ' << f.domain().dim() << '\n';
  for (std::size_t j = 0; j < f.domain().dim(); ++j) out << f.coeffs().column(j).to_string() << '\n';
  return out.str();
}

MapOnSpace parse_map(std::string_view text, const MatSubspace& domain) {
  text_detail::LineReader reader(text);
  std::string_view line;
  if (!reader.next_content(line)) throw ParseError(reader.line_number(), "empty input");
  const auto tokens = text_detail::split_ws(line);
  if (tokens.size() != 3 || tokens[0] != "maponspace") {
    throw ParseError(reader.line_number(), "expected 'maponspace <n> <d>' header");
  }
  const std::size_t n = text_detail::parse_count(tokens[1], reader.line_number());
  const std::size_t d = text_detail::parse_count(tokens[2], reader.line_number());
  if (n != domain.rows() || d != domain.dim()) {
    throw ParseError(reader.line_number(), "map shape does not match the domain space");
  }
  std::vector<BitVector> images;
  for (std::size_t j = 0; j < d; ++j) {
    const BitMatrix col = text_detail::read_block(reader, 1, n);
    images.emplace_back(n, col.row(0));
  }
  return MapOnSpace::from_images(domain, images);
}

}  // namespace rcf2
