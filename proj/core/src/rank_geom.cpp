#include "rcf2/rank_geom.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "rcf2/catalog.hpp"
#include "rcf2/echelon.hpp"
#include "rcf2/equivalence.hpp"
#include "rcf2/error.hpp"

namespace rcf2 {

namespace {

constexpr std::size_t kMaxRankDim = 20;

Word embed_corner(Word v, std::size_t rows, std::size_t cols, std::size_t out_cols) {
  Word out = 0;
  const Word mask = low_mask(cols);
  for (std::size_t i = 0; i < rows; ++i) out |= ((v >> (i * cols)) & mask) << (i * out_cols);
  return out;
}

void check_corner(std::size_t inner_rows, std::size_t inner_cols, std::size_t rows, std::size_t cols) {
  if (inner_rows > rows || inner_cols > cols) throw ShapeError("corner embedding: block larger than the target");
  if (rows * cols > kWordBits) throw BoundError("corner embedding: ambient larger than 64 entries");
}

/// Flattened unit matrices outside the upper-left block.
std::vector<Word> outside_corner(std::size_t inner_rows, std::size_t inner_cols, std::size_t rows, std::size_t cols) {
  std::vector<Word> out;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (i >= inner_rows || j >= inner_cols) out.push_back(Word{1} << (i * cols + j));
    }
  }
  return out;
}

/// p x (p-1) matrix whose columns span the kernel of the linear form `form`.
BitMatrix hyperplane_basis(std::size_t p, Word form) {
  BitMatrix m(1, p);
  m.set_row(0, form);
  return BitMatrix::from_columns(p, nullspace(m));
}

}  // namespace

std::size_t upper_rank(const MatSubspace& s) {
  if (s.dim() > kMaxRankDim) throw BoundError("upper_rank: dim must be at most 20, got " + std::to_string(s.dim()));
  const std::size_t cap = std::min(s.rows(), s.cols());
  std::size_t best = 0;
  for_each_element(s, [&](Word e, Word) {
    if (best < cap) best = std::max(best, flat_rank(e, s.rows(), s.cols()));
  });
  return best;
}

std::size_t lower_rank(const AffineMatSpace& a) {
  if (a.dim() > kMaxRankDim) throw BoundError("lower_rank: dim must be at most 20, got " + std::to_string(a.dim()));
  std::size_t best = std::min(a.rows(), a.cols());
  for_each_element(a.direction(), [&](Word e, Word) {
    if (best > 0) best = std::min(best, flat_rank(e ^ a.offset_flat(), a.rows(), a.cols()));
  });
  return best;
}

MatSubspace i_np(const MatSubspace& x, std::size_t rows, std::size_t cols) {
  check_corner(x.rows(), x.cols(), rows, cols);
  std::vector<Word> gens = outside_corner(x.rows(), x.cols(), rows, cols);
  for (Word v : x.flat_basis()) gens.push_back(embed_corner(v, x.rows(), x.cols(), cols));
  return MatSubspace::from_flat(rows, cols, gens);
}

AffineMatSpace i_np(const AffineMatSpace& x, std::size_t rows, std::size_t cols) {
  MatSubspace dir = i_np(x.direction(), rows, cols);
  return AffineMatSpace::from_flat(embed_corner(x.offset_flat(), x.rows(), x.cols(), cols), std::move(dir));
}

MatSubspace tilde(const MatSubspace& x, std::size_t rows, std::size_t cols) {
  check_corner(x.rows(), x.cols(), rows, cols);
  std::vector<Word> gens;
  for (Word v : x.flat_basis()) gens.push_back(embed_corner(v, x.rows(), x.cols(), cols));
  return MatSubspace::from_flat(rows, cols, gens);
}

MatSubspace restrict_columns(const MatSubspace& s, const BitMatrix& basis) {
  if (basis.rows() != s.cols()) throw ShapeError("restrict_columns: basis rows differ from column count");
  return multiply(BitMatrix::identity(s.rows()), s, basis);
}

bool is_primitive(const MatSubspace& s) {
  if (s.rows() > 8 || s.cols() > 8) throw BoundError("is_primitive: at most 8 rows and columns");
  if (!is_reduced(s)) return false;
  const std::size_t r = upper_rank(s);
  const MatSubspace t = transpose_space(s);
  for (const MatSubspace* side : {&s, &t}) {
    const std::size_t p = side->cols();
    for (Word form = 1; form < (Word{1} << p); ++form) {
      if (upper_rank(restrict_columns(*side, hyperplane_basis(p, form))) + 1 <= r) return false;
    }
  }
  return true;
}

bool has_corner_compression(const MatSubspace& s) {
  const std::size_t p = s.cols();
  if (p > 16) throw BoundError("has_corner_compression: at most 16 columns");
  for (Word form = 1; form < (Word{1} << p); ++form) {
    if (total_image(restrict_columns(s, hyperplane_basis(p, form))).dim() <= 1) return true;
  }
  return false;
}

bool AffineCensus::ok() const noexcept {
  if (unmatched != 0 || !orbits_disjoint) return false;
  if (!complete) return true;
  std::uint64_t total = 0;
  for (const auto& c : classes) total += c.orbit_size;
  return total == survivors;
}

std::vector<AffineClass> affine_lrk2_representatives(std::size_t rows, std::size_t cols) {
  if (rows < 2 || cols < 2 || rows > 3 || cols > 3) {
    throw BoundError("affine census supports shapes with 2 <= n, p <= 3");
  }
  std::vector<AffineClass> out;
  auto add = [&](const std::string& name, const AffineMatSpace& w) {
    out.push_back(AffineClass{name, i_np(w, rows, cols), 0});
  };
  add("i(I+F2C)", literal("IC").affine());
  add("i(I+F2J)", literal("IJ").affine());
  const AffineMatSpace f2 = literal("F2").affine();
  if (cols >= 3) add("i(F2)", f2);
  if (rows >= 3) {
    add("i(F2^T)", AffineMatSpace::from_flat(BitMatrix::unflatten(2, 3, f2.offset_flat()).transpose().flatten(),
                                             transpose_space(f2.direction())));
  }
  if (rows >= 3 && cols >= 3) add("i(F3)", literal("F3").affine());
  return out;
}

AffineCensus classify_affine_lrk2(std::size_t rows, std::size_t cols, std::size_t shard, std::size_t shards) {
  if (shards == 0 || shard >= shards) throw ArgumentError("shard index must be below the shard count");
  AffineCensus census;
  census.rows = rows;
  census.cols = cols;
  census.classes = affine_lrk2_representatives(rows, cols);
  census.complete = shards == 1;

  const std::size_t ambient = rows * cols;
  std::vector<std::uint8_t> rank_table(std::size_t{1} << ambient);
  std::vector<Word> low_rank;  // rank <= 1, including 0
  for (Word m = 0; m < rank_table.size(); ++m) {
    rank_table[m] = static_cast<std::uint8_t>(flat_rank(m, rows, cols));
    if (rank_table[m] <= 1) low_rank.push_back(m);
  }

  std::unordered_set<AffineMatSpace, AffineMatSpaceHash> known;
  std::uint64_t orbit_total = 0;
  for (auto& c : census.classes) {
    const auto members = orbit(c.representative);
    c.orbit_size = members.size();
    orbit_total += members.size();
    known.insert(members.begin(), members.end());
  }
  census.orbits_disjoint = known.size() == orbit_total;

  SubspaceEnumerator it(rows, cols, ambient - 3);
  const std::uint64_t total = it.total();
  const std::uint64_t begin = total * shard / shards;
  const std::uint64_t end = total * (shard + 1) / shards;
  it.seek(begin);
  for (std::uint64_t idx = begin; idx < end && it.next(); ++idx) {
    ++census.directions;
    const MatSubspace& dir = it.current();
    // Cosets containing a matrix of rank <= 1.
    std::uint8_t forbidden = 0;
    // Coset representatives are supported on the three non-pivot coordinates.
    std::array<Word, 3> free_bits{};
    Word free_coords = low_mask(ambient) & ~dir.pivot_mask();
    for (Word& b : free_bits) {
      b = free_coords & (~free_coords + 1);
      free_coords &= free_coords - 1;
    }
    auto coset_index = [&](Word rep) {
      return unsigned((rep & free_bits[0]) != 0) | unsigned((rep & free_bits[1]) != 0) << 1 |
             unsigned((rep & free_bits[2]) != 0) << 2;
    };
    for (Word m : low_rank) forbidden |= static_cast<std::uint8_t>(1U << coset_index(dir.reduce_flat(m)));
    for (unsigned k = 1; k < 8; ++k) {
      if ((forbidden >> k) & 1U) continue;
      const Word offset = ((k & 1U) ? free_bits[0] : 0) | ((k & 2U) ? free_bits[1] : 0) | ((k & 4U) ? free_bits[2] : 0);
      AffineMatSpace space = AffineMatSpace::from_flat(offset, dir);
      // Lower-rank exactly 2: some element of rank 2.
      bool has_rank2 = false;
      for_each_element(dir, [&](Word e, Word) { has_rank2 = has_rank2 || rank_table[e ^ offset] == 2; });
      if (!has_rank2) continue;
      ++census.survivors;
      if (!known.count(space)) ++census.unmatched;
    }
  }
  return census;
}

bool check_uniqueness_prop(std::size_t rows, std::size_t cols) {
  const AffineMatSpace c = i_np(literal("IC").affine(), rows, cols);
  const AffineMatSpace j = i_np(literal("IJ").affine(), rows, cols);
  if (are_equivalent(c, j)) return false;
  return stabilizer_size(c) > 1 && stabilizer_size(j) > 1;
}

}  // namespace rcf2
