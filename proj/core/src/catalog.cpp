#include "rcf2/catalog.hpp"

#include <algorithm>
#include <map>

#include "rcf2/error.hpp"
#include "rcf2/text_format.hpp"

namespace rcf2 {

MatSubspace ParametricSpace::linear() const { return MatSubspace::from_flat(rows, cols, generators); }

AffineMatSpace ParametricSpace::affine() const { return AffineMatSpace::from_flat(offset, linear()); }

ParametricSpace parametric(std::size_t rows, std::size_t cols, const std::vector<std::string>& entries) {
  if (entries.size() != rows) throw ShapeError("parametric: expected one entry string per row");
  if (rows * cols > kWordBits) throw BoundError("parametric: ambient larger than 64 entries");
  ParametricSpace out;
  out.rows = rows;
  out.cols = cols;
  // letter -> flattened support
  std::map<char, Word> support;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto tokens = text_detail::split_ws(entries[i]);
    if (tokens.size() != cols) {
      throw ShapeError("parametric: row " + std::to_string(i) + " has " + std::to_string(tokens.size()) + " entries");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const Word bit = Word{1} << (i * cols + j);
      std::string_view tok = tokens[j];
      std::size_t start = 0;
      while (start <= tok.size()) {
        std::size_t end = tok.find('+', start);
        if (end == std::string_view::npos) end = tok.size();
        const std::string_view term = tok.substr(start, end - start);
        if (term == "1") {
          out.offset ^= bit;
        } else if (term.size() == 1 && term[0] >= 'a' && term[0] <= 'z') {
          support[term[0]] ^= bit;
        } else if (term != "0") {
          throw ArgumentError("parametric: bad term '" + std::string(term) + "'");
        }
        start = end + 1;
      }
    }
  }
  for (const auto& [letter, bits] : support) {
    out.letters.push_back(letter);
    out.generators.push_back(bits);
  }
  return out;
}

namespace {

struct LiteralEntry {
  std::string name;
  std::size_t rows;
  std::size_t cols;
  std::vector<std::string> entries;
};

const std::vector<LiteralEntry>& literal_table() {
  static const std::vector<LiteralEntry> table = {
      {"V2", 3, 2, {"a b", "b c", "c 0"}},
      {"G3", 3, 3, {"a c b", "0 b+c e", "b d f"}},
      {"H3", 3, 3, {"a b c", "b d f", "c e b+c+d"}},
      {"I3", 3, 3, {"a d e", "b c f", "c a a+c+e+f"}},
      {"H4", 3, 4, {"a b+c f h", "b d a+c i", "c e g a+b"}},
      {"U3", 3, 3, {"0 a a+c", "a 0 b", "a+b c 0"}},
      {"M1", 3, 3, {"a 0 c", "0 a+b 0", "0 0 b"}},
      {"M2", 3, 3, {"a c 0", "0 a+b a", "0 0 b"}},
      {"M3", 3, 3, {"a b 0", "0 a+b c", "0 0 b"}},
      {"M4", 3, 3, {"a c 0", "0 a+b c", "0 0 b"}},
      {"J3", 3, 3, {"a d e", "0 b f", "0 0 a+b"}},
      {"E2", 2, 3, {"a b 0", "0 a b"}},
      {"E3", 3, 3, {"a b 0", "0 a b", "0 0 a"}},
      {"T3perp", 2, 3, {"0 a b", "a b c"}},
      {"G3perp", 3, 3, {"0 a b+c", "b b 0", "c 0 0"}},
      {"H3perp", 3, 3, {"0 a+b c", "b a 0", "a+c 0 a"}},
      {"I3perp", 3, 3, {"a+c 0 b", "0 b+c a", "c c c"}},
      {"H4perp", 4, 3, {"b+c a+c a+b", "a 0 0", "0 b 0", "0 0 c"}},
      {"I3perp-hat", 3, 3, {"a b a", "b c c", "0 0 a+b+c"}},
      {"IC", 2, 2, {"1 a", "a a+1"}},
      {"IJ", 2, 2, {"1 a", "0 1"}},
      {"F2", 2, 3, {"a+1 a c", "d a+1 a"}},
      {"F3", 3, 3, {"a d e", "a+b+1 a+b f", "c a+b+1 b"}},
  };
  return table;
}

const std::vector<ParametricSpace>& literal_spaces() {
  static const std::vector<ParametricSpace> spaces = [] {
    std::vector<ParametricSpace> out;
    for (const auto& e : literal_table()) out.push_back(parametric(e.rows, e.cols, e.entries));
    return out;
  }();
  return spaces;
}

void expect_params(std::string_view name, std::span<const std::size_t> params, std::size_t count) {
  if (params.size() != count) {
    throw ArgumentError("catalog '" + std::string(name) + "' takes " + std::to_string(count) + " parameter(s), got " +
                        std::to_string(params.size()));
  }
}

bool is_type_in_3_rows(int type) { return type == 2 || type >= 4; }

}  // namespace

const std::vector<std::string>& literal_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : literal_table()) out.push_back(e.name);
    return out;
  }();
  return names;
}

const ParametricSpace& literal(std::string_view name) {
  const auto& table = literal_table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].name == name) return literal_spaces()[i];
  }
  throw ArgumentError("unknown catalog name '" + std::string(name) + "'");
}

MatSubspace symmetric(std::size_t r) {
  if (r * r > kWordBits) throw BoundError("symmetric: r must be at most 8");
  std::vector<Word> gens;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) gens.push_back((Word{1} << (i * r + j)) | (Word{1} << (j * r + i)));
  }
  return MatSubspace::from_flat(r, r, gens);
}

MatSubspace alternating(std::size_t r) {
  if (r * r > kWordBits) throw BoundError("alternating: r must be at most 8");
  std::vector<Word> gens;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) gens.push_back((Word{1} << (i * r + j)) | (Word{1} << (j * r + i)));
  }
  return MatSubspace::from_flat(r, r, gens);
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out = literal_names();
  out.insert(out.end(), {"sym <r>", "alt <r>", "full <n> <p>", "zero <n> <p>", "type <i> <n> <p>"});
  return out;
}

AnySpace named(std::string_view name, std::span<const std::size_t> params) {
  if (name == "sym") {
    expect_params(name, params, 1);
    return symmetric(params[0]);
  }
  if (name == "alt") {
    expect_params(name, params, 1);
    return alternating(params[0]);
  }
  if (name == "full" || name == "zero") {
    expect_params(name, params, 2);
    if (params[0] * params[1] > kWordBits) throw BoundError("ambient larger than 64 entries");
    if (name == "full") return MatSubspace::full(params[0], params[1]);
    return MatSubspace(params[0], params[1]);
  }
  if (name == "type") {
    expect_params(name, params, 3);
    return type_space(static_cast<int>(params[0]), params[1], params[2]);
  }
  expect_params(name, params, 0);
  const ParametricSpace& p = literal(name);
  if (p.offset) return p.affine();
  return p.linear();
}

std::pair<std::size_t, std::size_t> type_shape(int type, std::size_t n_block, std::size_t p_block) {
  switch (type) {
    case 1: return {2 + n_block, 2 + p_block};
    case 2: return {3, 3 + p_block};
    case 3: return {3 + n_block, 2 + p_block};
    case 4:
    case 5:
    case 6: return {3, 3 + p_block};
    case 7: return {3, 4 + p_block};
    default: throw ArgumentError("type must be between 1 and 7, got " + std::to_string(type));
  }
}

std::optional<std::pair<std::size_t, std::size_t>> type_params(int type, std::size_t rows, std::size_t cols) {
  const auto [base_rows, base_cols] = type_shape(type, 0, 0);
  if (rows < base_rows || cols < base_cols) return std::nullopt;
  if (is_type_in_3_rows(type) && rows != 3) return std::nullopt;
  return std::pair{is_type_in_3_rows(type) ? std::size_t{0} : rows - base_rows, cols - base_cols};
}

MatSubspace type_space(int type, std::size_t n_block, std::size_t p_block) {
  const auto [rows, cols] = type_shape(type, n_block, p_block);
  if (rows * cols > kWordBits) throw BoundError("type_space: ambient larger than 64 entries");
  switch (type) {
    case 1: return vee(symmetric(2), MatSubspace::full(n_block, p_block));
    case 2: return coprod(symmetric(3), MatSubspace::full(3, p_block));
    case 3: return vee(literal("V2").linear(), MatSubspace::full(n_block, p_block));
    case 4: return coprod(literal("G3").linear(), MatSubspace::full(3, p_block));
    case 5: return coprod(literal("H3").linear(), MatSubspace::full(3, p_block));
    case 6: return coprod(literal("I3").linear(), MatSubspace::full(3, p_block));
    default: return coprod(literal("H4").linear(), MatSubspace::full(3, p_block));
  }
}

std::function<BitVector(const BitMatrix&)> type_witness_formula(int type, std::size_t rows) {
  auto column = [rows](std::initializer_list<bool> top) {
    BitVector v(rows);
    std::size_t i = 0;
    for (bool b : top) v.set(i++, b);
    return v;
  };
  switch (type) {
    case 1:
      return [column](const BitMatrix& m) { return column({m.get(0, 0), m.get(1, 1)}); };
    case 2:
    case 5:
      return [column](const BitMatrix& m) { return column({m.get(0, 0), m.get(1, 1), m.get(2, 2)}); };
    case 3:
      return [column](const BitMatrix& m) { return column({false, m.get(1, 0) != m.get(1, 1)}); };
    case 4:
      return [column](const BitMatrix& m) { return column({m.get(0, 0) != m.get(0, 2)}); };
    case 6:
      return [column](const BitMatrix& m) { return column({false, false, m.get(0, 0) != m.get(2, 0)}); };
    case 7:
      return [column](const BitMatrix& m) {
        const bool t = m.get(0, 0) ^ m.get(1, 0) ^ m.get(2, 0);
        return column({t, t, t});
      };
    default: throw ArgumentError("type must be between 1 and 7, got " + std::to_string(type));
  }
}

}  // namespace rcf2
