#pragma once

// Plain-text serialization of matrices and matrix spaces.
//
//   matspace <n> <p> <d>        followed by d blocks of n lines of p chars in {0,1}
//   affmatspace <n> <p> <d>     offset block first, then d direction blocks
//   matrix <n> <p>              a single block
//
// Blocks are separated by blank lines. Lines starting with '#' are comments.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rcf2/bit_matrix.hpp"
#include "rcf2/mat_space.hpp"

namespace rcf2 {

std::string emit(const MatSubspace& s);
std::string emit(const AffineMatSpace& a);
std::string emit_matrix(const BitMatrix& m);

MatSubspace parse_matspace(std::string_view text);
AffineMatSpace parse_affine(std::string_view text);
BitMatrix parse_matrix(std::string_view text);

using AnySpace = std::variant<MatSubspace, AffineMatSpace>;

/// Dispatches on the header keyword.
AnySpace parse_space(std::string_view text);

AnySpace read_space_file(const std::string& path);

namespace text_detail {

/// Line cursor shared by the parsers in this library.
class LineReader {
 public:
  explicit LineReader(std::string_view text);

  /// Next non-comment line, skipping blank lines. Returns false at end of input.
  bool next_content(std::string_view& line);
  /// Next line verbatim (comments skipped). Returns false at end of input.
  bool next_raw(std::string_view& line);
  std::size_t line_number() const noexcept { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

std::vector<std::string_view> split_ws(std::string_view line);
std::size_t parse_count(std::string_view token, std::size_t line);
/// Reads a block of `rows` lines of `cols` bits, skipping leading blank lines.
BitMatrix read_block(LineReader& reader, std::size_t rows, std::size_t cols);

}  // namespace text_detail

}  // namespace rcf2
