#pragma once

// Range-compatible and local linear maps on spaces of matrices.
//
// A linear map F : S -> F2^n is recorded by its n x d coefficient matrix G,
// column j being the image of the j-th stored basis element of S. F is
// range-compatible when F(s) lies in the column space of s for every s in S,
// and local when F(s) = s x for a fixed vector x.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcf2/bit_matrix.hpp"
#include "rcf2/mat_space.hpp"

namespace rcf2 {

class MapOnSpace {
 public:
  MapOnSpace() = default;
  MapOnSpace(MatSubspace domain, BitMatrix coeffs);

  static MapOnSpace from_images(MatSubspace domain, const std::vector<BitVector>& images);
  /// Coefficient matrix given as a flattened element of Mat_{n,d}.
  static MapOnSpace from_flat(MatSubspace domain, Word coeffs);
  /// Evaluates a linear formula on each basis element. The formula is trusted to be linear.
  static MapOnSpace from_formula(MatSubspace domain, const std::function<BitVector(const BitMatrix&)>& formula);
  static MapOnSpace zero(MatSubspace domain);
  /// The evaluation map s -> s x.
  static MapOnSpace local(MatSubspace domain, const BitVector& x);

  const MatSubspace& domain() const noexcept { return domain_; }
  const BitMatrix& coeffs() const noexcept { return coeffs_; }
  Word flat_coeffs() const { return coeffs_.flatten(); }
  std::size_t target_dim() const noexcept { return coeffs_.rows(); }

  /// Image of the element with the given coordinates.
  BitVector at_coords(Word coords) const;
  /// Image of an element of the domain.
  BitVector operator()(const BitMatrix& s) const;

  friend bool operator==(const MapOnSpace&, const MapOnSpace&) = default;

 private:
  MatSubspace domain_;
  BitMatrix coeffs_;
};

struct RcAnalysis {
  MatSubspace rc;   // all range-compatible linear maps, inside Mat_{n,d}
  MatSubspace loc;  // all local maps, inside Mat_{n,d}
  std::size_t defect = 0;
};

/// All range-compatible linear maps. Requires dim S <= 14 and n * dim S <= 64.
MatSubspace rc_space(const MatSubspace& s);

/// All local maps; dimension p - dim(common kernel).
MatSubspace loc_space(const MatSubspace& s);

/// dim rc_space - dim loc_space, with an early exit once localness is forced.
std::size_t rc_defect(const MatSubspace& s);

RcAnalysis analyze_rc(const MatSubspace& s);

/// Exhaustive check over all elements, dim S <= 20.
bool is_range_compatible(const MatSubspace& s, const MapOnSpace& f);

/// Some x with F = (s -> s x), if one exists.
std::optional<BitVector> is_local(const MatSubspace& s, const MapOnSpace& f);

/// A non-local range-compatible map reduced modulo the local maps, or none
/// when every range-compatible map is local.
std::optional<MapOnSpace> witness_nonlocal(const MatSubspace& s);

/// Coefficient matrix reduced modulo loc_space (canonical coset representative).
Word normalize_modulo_local(const MatSubspace& s, Word coeffs);

/// The induced map F mod y on quotient_mod(S, y); none when F does not
/// descend (only possible for maps that are not range-compatible).
std::optional<MapOnSpace> project_map(const MatSubspace& s, const MapOnSpace& f, const BitVector& y);

/// `maponspace <n> <d>` followed by d lines, the images of the basis elements.
std::string emit_map(const MapOnSpace& f);
MapOnSpace parse_map(std::string_view text, const MatSubspace& domain);

}  // namespace rcf2
