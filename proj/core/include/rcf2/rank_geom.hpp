#pragma once

// Upper and lower ranks, block embeddings, primitivity, and the census of
// codimension-3 affine spaces with lower-rank 2.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rcf2/mat_space.hpp"

namespace rcf2 {

/// Max rank over all elements, dim S <= 20.
std::size_t upper_rank(const MatSubspace& s);

/// Min rank over all elements of the coset, dim <= 20.
std::size_t lower_rank(const AffineMatSpace& a);

/// X in the upper-left corner of Mat_{n,p}, every other entry free.
MatSubspace i_np(const MatSubspace& x, std::size_t rows, std::size_t cols);
AffineMatSpace i_np(const AffineMatSpace& x, std::size_t rows, std::size_t cols);

/// X in the upper-left corner of Mat_{n,p}, every other entry zero.
MatSubspace tilde(const MatSubspace& x, std::size_t rows, std::size_t cols);

/// Image of S restricted to a column subspace: { M B } for the p x k matrix B.
MatSubspace restrict_columns(const MatSubspace& s, const BitMatrix& basis);

/// Reduced, and neither a column nor a row hyperplane compression drops the
/// upper-rank. Requires n, p <= 8.
bool is_primitive(const MatSubspace& s);

/// Some column hyperplane H and line L with M(H) inside L for every M in S.
bool has_corner_compression(const MatSubspace& s);

struct AffineClass {
  std::string name;
  AffineMatSpace representative;
  std::uint64_t orbit_size = 0;
};

struct AffineCensus {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t directions = 0;        // direction subspaces scanned (this shard)
  std::uint64_t survivors = 0;         // codim-3 affine spaces with lower-rank 2 (this shard)
  std::uint64_t unmatched = 0;         // survivors outside every representative orbit
  std::vector<AffineClass> classes;    // listed representatives with orbit sizes
  bool orbits_disjoint = false;
  bool complete = false;               // true when the whole range was scanned
  /// Survivors equal the union of the representative orbits.
  bool ok() const noexcept;
};

/// Representatives listed for the shape: i_np of I+F2 C, I+F2 J, and the
/// F2, F2^T, F3 spaces where they fit.
std::vector<AffineClass> affine_lrk2_representatives(std::size_t rows, std::size_t cols);

/// (n, p) in {(2,2), (2,3), (3,2), (3,3)}. Shards split the direction range.
AffineCensus classify_affine_lrk2(std::size_t rows, std::size_t cols, std::size_t shard = 0, std::size_t shards = 1);

/// i_np(I+F2 C) and i_np(I+F2 J) are inequivalent and each has a non-trivial stabilizer.
bool check_uniqueness_prop(std::size_t rows, std::size_t cols);

}  // namespace rcf2
