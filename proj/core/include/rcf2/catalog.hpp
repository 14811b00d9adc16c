#pragma once

// Named matrix spaces, transcribed from their parametric displays.
//
// A parametric display lists every entry as a sum of free parameters
// (single lowercase letters) and optionally the constant 1. Parameters are
// ordered alphabetically and that order is the generator order.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rcf2/bit_matrix.hpp"
#include "rcf2/mat_space.hpp"
#include "rcf2/text_format.hpp"

namespace rcf2 {

struct ParametricSpace {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string letters;          // free parameters, generator order
  std::vector<Word> generators;  // flattened, one per letter
  Word offset = 0;               // constant term, non-zero only for affine spaces

  MatSubspace linear() const;
  AffineMatSpace affine() const;
};

/// Parses one string per row, entries separated by whitespace, e.g.
/// {"a c b", "0 b+c e", "b d f"}.
ParametricSpace parametric(std::size_t rows, std::size_t cols, const std::vector<std::string>& entries);

/// Names with a literal display (no parameters), in a fixed order.
const std::vector<std::string>& literal_names();

/// The literal display of a named space.
const ParametricSpace& literal(std::string_view name);

MatSubspace symmetric(std::size_t r);
/// Alternating (symmetric with zero diagonal) r x r matrices.
MatSubspace alternating(std::size_t r);

/// Every name accepted by named(), with its parameter signature, for help output.
std::vector<std::string> catalog_names();

/// Builds a catalog space. Literal names take no parameters; `sym` and `alt`
/// take r; `full` and `zero` take n p; `type` takes i n p.
AnySpace named(std::string_view name, std::span<const std::size_t> params = {});

/// Representative of Type i (1..7). Types 2 and 4-7 ignore `n_block`.
MatSubspace type_space(int type, std::size_t n_block, std::size_t p_block);

/// Ambient shape of type_space(type, n_block, p_block).
std::pair<std::size_t, std::size_t> type_shape(int type, std::size_t n_block, std::size_t p_block);

/// Block parameters (n_block, p_block) placing Type i in Mat_{rows,cols}, if any.
std::optional<std::pair<std::size_t, std::size_t>> type_params(int type, std::size_t rows, std::size_t cols);

/// The tabulated non-local range-compatible map of Type i on a space with `rows` rows.
std::function<BitVector(const BitMatrix&)> type_witness_formula(int type, std::size_t rows);

}  // namespace rcf2
