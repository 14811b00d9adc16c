#pragma once

// Reflexive closures: R(S) = { g : g x in S x for every x }.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "rcf2/mat_space.hpp"

namespace rcf2 {

/// Requires p <= 20.
MatSubspace reflexive_closure(const MatSubspace& s);

/// dim R(S) - dim S.
std::size_t reflexivity_defect(const MatSubspace& s);

/// Span of the rank-1 elements of S, dim S <= 20.
MatSubspace rank_one_span(const MatSubspace& s);

/// Which exceptional case of the two-dimensional classification a reduced
/// 2-dimensional space falls into.
enum class TwoDimCase { Reflexive, SquareFewRankOne, E2, E3, E2Transposed };

const char* to_string(TwoDimCase c);

/// Case predicted for a reduced 2-dimensional subspace.
TwoDimCase predicted_2dim_case(const MatSubspace& s);

struct TwoDimReport {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t reduced_spaces = 0;
  std::map<TwoDimCase, std::uint64_t> case_counts;
  /// Observed defects in the square case with at most one rank-1 element.
  std::map<std::size_t, std::uint64_t> square_case_defects;
  std::vector<MatSubspace> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Exhausts every reduced 2-dimensional subspace of Mat_{n,p}, n, p <= 3:
/// defect > 0 exactly in the exceptional cases, and defect 1 for E2, E3, E2^T.
TwoDimReport check_2dim_theorem(std::size_t rows, std::size_t cols);

}  // namespace rcf2
