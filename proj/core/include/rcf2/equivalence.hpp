#pragma once

// Equivalence of matrix spaces under (P, Q) . S = P S Q^-1, invariant
// fingerprints, orbits, and recognition of the seven special types.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcf2/bit_matrix.hpp"
#include "rcf2/mat_space.hpp"

namespace rcf2 {

struct InvariantProfile {
  std::size_t dim = 0;
  std::vector<std::uint64_t> rank_counts;  // index = rank, over all elements
  std::vector<std::uint64_t> col_profile;  // index = dim S x, over x != 0
  std::vector<std::uint64_t> row_profile;  // index = dim S^T y, over y != 0
  std::size_t u0_dim = 0;
  std::size_t v0_dim = 0;

  friend bool operator==(const InvariantProfile&, const InvariantProfile&) = default;
};

/// Requires dim S <= 14 and at most 16 rows and columns.
InvariantProfile profile(const MatSubspace& s);

/// P S Q^-1 = T.
struct Certificate {
  BitMatrix p;
  BitMatrix q;
};

MatSubspace act(const Certificate& c, const MatSubspace& s);
AffineMatSpace act(const Certificate& c, const AffineMatSpace& a);

/// A certificate mapping S onto T, or none. Requires equal shapes and
/// min(n, p) <= 4, max(n, p) <= 6.
std::optional<Certificate> are_equivalent(const MatSubspace& s, const MatSubspace& t);
std::optional<Certificate> are_equivalent(const AffineMatSpace& s, const AffineMatSpace& t);

/// Number of pairs (P, Q) with P S Q^-1 = S.
std::uint64_t stabilizer_size(const MatSubspace& s);
std::uint64_t stabilizer_size(const AffineMatSpace& a);

/// Default orbit generators of GL_k: the transvection I + E_{1,2} and the
/// cyclic shift of coordinates. Empty for k = 1.
std::vector<BitMatrix> gl_generators(std::size_t k);

/// Breadth-first closure under the generators; the first element is S itself.
std::vector<MatSubspace> orbit(const MatSubspace& s);
std::vector<AffineMatSpace> orbit(const AffineMatSpace& a);

/// As orbit(), with explicit left (n x n) and right (p x p) generators acting as S -> L S and S -> S R.
std::vector<MatSubspace> orbit(const MatSubspace& s, const std::vector<BitMatrix>& left,
                               const std::vector<BitMatrix>& right);

struct TypeReport {
  int type_id = 0;  // 0 = not of a special type
  std::size_t n_block = 0;
  std::size_t p_block = 0;
  std::optional<Certificate> certificate;  // maps S onto type_space(type_id, n_block, p_block)
  std::string reason;
};

/// Recognizes Types 1-7. Spaces whose codimension differs from 2n - 3 are
/// reported with type 0 and reason "codimension precondition".
TypeReport classify_type(const MatSubspace& s);

}  // namespace rcf2
