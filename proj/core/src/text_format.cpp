#include "rcf2/text_format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "rcf2/error.hpp"

namespace rcf2 {

namespace text_detail {

LineReader::LineReader(std::string_view text) : text_(text) {}

bool LineReader::next_raw(std::string_view& line) {
  while (pos_ <= text_.size()) {
    if (pos_ == text_.size()) return false;
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() == '#') continue;
    return true;
  }
  return false;
}

bool LineReader::next_content(std::string_view& line) {
  while (next_raw(line)) {
    if (line.find_first_not_of(" \t") != std::string_view::npos) return true;
  }
  return false;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_count(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

BitMatrix read_block(LineReader& reader, std::size_t rows, std::size_t cols) {
  BitMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    std::string_view line;
    const bool ok = i == 0 ? reader.next_content(line) : reader.next_raw(line);
    if (!ok) throw ParseError(reader.line_number(), "unexpected end of input inside a matrix block");
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    if (line.size() != cols) {
      throw ParseError(reader.line_number(), "expected " + std::to_string(cols) + " entries, got " +
                                                 std::to_string(line.size()));
    }
    Word row = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      if (line[j] == '1') {
        row |= Word{1} << j;
      } else if (line[j] != '0') {
        throw ParseError(reader.line_number(), std::string("invalid character '") + line[j] + "' (only 0/1 allowed)");
      }
    }
    m.set_row(i, row);
  }
  return m;
}

}  // namespace text_detail

using text_detail::LineReader;
using text_detail::parse_count;
using text_detail::read_block;
using text_detail::split_ws;

namespace {

std::string block(Word flat, std::size_t rows, std::size_t cols) {
  return BitMatrix::unflatten(rows, cols, flat).to_string();
}

struct Header {
  std::string keyword;
  std::vector<std::size_t> counts;
  std::size_t line = 0;
};

Header read_header(LineReader& reader) {
  std::string_view line;
  if (!reader.next_content(line)) throw ParseError(reader.line_number(), "empty input");
  const auto tokens = split_ws(line);
  Header h;
  h.keyword = std::string(tokens.front());
  h.line = reader.line_number();
  for (std::size_t i = 1; i < tokens.size(); ++i) h.counts.push_back(parse_count(tokens[i], h.line));
  return h;
}

void expect_counts(const Header& h, std::size_t n) {
  if (h.counts.size() != n) {
    throw ParseError(h.line, "header '" + h.keyword + "' expects " + std::to_string(n) + " integers");
  }
}

void expect_end(LineReader& reader) {
  std::string_view line;
  if (reader.next_content(line)) throw ParseError(reader.line_number(), "trailing content after the last block");
}

void check_shape(const Header& h, std::size_t rows, std::size_t cols) {
  if (rows * cols > kWordBits) throw ParseError(h.line, "ambient space larger than 64 entries");
}

MatSubspace parse_matspace_body(LineReader& reader, const Header& h) {
  expect_counts(h, 3);
  const std::size_t n = h.counts[0], p = h.counts[1], d = h.counts[2];
  check_shape(h, n, p);
  std::vector<Word> gens;
  for (std::size_t k = 0; k < d; ++k) gens.push_back(read_block(reader, n, p).flatten());
  expect_end(reader);
  return MatSubspace::from_flat(n, p, gens);
}

AffineMatSpace parse_affine_body(LineReader& reader, const Header& h) {
  expect_counts(h, 3);
  const std::size_t n = h.counts[0], p = h.counts[1], d = h.counts[2];
  check_shape(h, n, p);
  const Word offset = read_block(reader, n, p).flatten();
  std::vector<Word> gens;
  for (std::size_t k = 0; k < d; ++k) gens.push_back(read_block(reader, n, p).flatten());
  expect_end(reader);
  return AffineMatSpace::from_flat(offset, MatSubspace::from_flat(n, p, gens));
}

}  // namespace

std::string emit(const MatSubspace& s) {
  std::ostringstream out;
  out << "matspace " << s.rows() << ' ' << s.cols() << ' ' << s.dim() << '\n';
  for (std::size_t k = 0; k < s.dim(); ++k) {
    if (k) out << '\n';
    out << block(s.flat_basis()[k], s.rows(), s.cols());
  }
  return out.str();
}

std::string emit(const AffineMatSpace& a) {
  std::ostringstream out;
  out << "affmatspace " << a.rows() << ' ' << a.cols() << ' ' << a.dim() << '\n';
  out << block(a.offset_flat(), a.rows(), a.cols());
  for (Word v : a.direction().flat_basis()) out << '\n' << block(v, a.rows(), a.cols());
  return out.str();
}

std::string emit_matrix(const BitMatrix& m) {
  std::ostringstream out;
  out << "matrix " << m.rows() << ' ' << m.cols() << '\n' << m.to_string();
  return out.str();
}

MatSubspace parse_matspace(std::string_view text) {
  LineReader reader(text);
  const Header h = read_header(reader);
  if (h.keyword != "matspace") throw ParseError(h.line, "expected 'matspace' header, got '" + h.keyword + "'");
  return parse_matspace_body(reader, h);
}

AffineMatSpace parse_affine(std::string_view text) {
  LineReader reader(text);
  const Header h = read_header(reader);
  if (h.keyword != "affmatspace") throw ParseError(h.line, "expected 'affmatspace' header, got '" + h.keyword + "'");
  return parse_affine_body(reader, h);
}

BitMatrix parse_matrix(std::string_view text) {
  LineReader reader(text);
  const Header h = read_header(reader);
  if (h.keyword != "matrix") throw ParseError(h.line, "expected 'matrix' header, got '" + h.keyword + "'");
  expect_counts(h, 2);
  BitMatrix m = read_block(reader, h.counts[0], h.counts[1]);
  expect_end(reader);
  return m;
}

AnySpace parse_space(std::string_view text) {
  LineReader reader(text);
  const Header h = read_header(reader);
  if (h.keyword == "matspace") return parse_matspace_body(reader, h);
  if (h.keyword == "affmatspace") return parse_affine_body(reader, h);
  throw ParseError(h.line, "unknown header keyword '" + h.keyword + "'");
}

AnySpace read_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_space(buf.str());
}

}  // namespace rcf2
