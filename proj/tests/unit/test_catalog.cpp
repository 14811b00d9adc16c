#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rcf2/catalog.hpp"
#include "rcf2/equivalence.hpp"
#include "rcf2/error.hpp"
#include "rcf2/range_compat.hpp"

using namespace rcf2;

namespace {

struct GoldenSpace {
  std::string name;
  std::size_t rows = 0, cols = 0;
  std::vector<Word> generators;
  Word offset = 0;
};

Word read_block(std::istream& in, std::size_t rows, std::size_t cols) {
  Word out = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    std::string line;
    in >> line;
    REQUIRE(line.size() == cols);
    for (std::size_t j = 0; j < cols; ++j) {
      if (line[j] == '1') out |= Word{1} << (i * cols + j);
    }
  }
  return out;
}

std::vector<GoldenSpace> load_golden() {
  std::ifstream in(RCF2_GOLDEN_DIR "/catalog.txt");
  REQUIRE(in);
  std::vector<GoldenSpace> out;
  std::string token;
  while (in >> token) {
    if (token == "#") {
      std::getline(in, token);
      continue;
    }
    if (token[0] == '#') {
      std::getline(in, token);
      continue;
    }
    REQUIRE(token == "space");
    GoldenSpace g;
    std::size_t count = 0;
    in >> g.name >> g.rows >> g.cols >> count;
    while (in >> token && token != "end") {
      if (token == "gen") {
        in >> token;
        g.generators.push_back(read_block(in, g.rows, g.cols));
      } else {
        REQUIRE(token == "offset");
        g.offset = read_block(in, g.rows, g.cols);
      }
    }
    REQUIRE(g.generators.size() == count);
    out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("catalog generators match the golden transcription") {
  const auto golden = load_golden();
  CHECK(golden.size() == literal_names().size());
  for (const auto& g : golden) {
    INFO(g.name);
    const ParametricSpace& p = literal(g.name);
    CHECK(p.rows == g.rows);
    CHECK(p.cols == g.cols);
    CHECK(p.generators == g.generators);
    CHECK(p.offset == g.offset);
  }
}

TEST_CASE("named examples") {
  const MatSubspace v2 = std::get<MatSubspace>(named("V2"));
  CHECK(v2.rows() == 3);
  CHECK(v2.cols() == 2);
  CHECK(v2.dim() == 3);
  CHECK(v2.codim() == 3);
  CHECK(std::get<MatSubspace>(named("H4")).dim() == 9);
  const std::size_t two[] = {2};
  CHECK(std::get<MatSubspace>(named("sym", two)).dim() == 3);
  CHECK(std::holds_alternative<AffineMatSpace>(named("F3")));
  CHECK_THROWS_AS(named("nonsense"), ArgumentError);
  CHECK_THROWS_AS(named("sym"), ArgumentError);
}

TEST_CASE("dimensions of the listed spaces") {
  for (const char* name : {"V2", "G3", "H3", "I3", "H4"}) CHECK(literal(name).linear().codim() == 3);
  for (const char* name : {"U3", "M1", "M2", "M3", "M4", "G3perp", "H3perp", "I3perp", "H4perp", "T3perp"}) {
    CHECK(literal(name).linear().dim() == 3);
  }
  CHECK(literal("J3").linear().dim() == 5);
  CHECK(literal("F3").affine().codim() == 3);
  CHECK(literal("F2").affine().codim() == 3);
}

TEST_CASE("type_space examples") {
  const MatSubspace t1 = type_space(1, 1, 1);
  CHECK(t1 == vee(symmetric(2), MatSubspace::full(1, 1)));
  CHECK(t1.dim() == 6);
  const MatSubspace t3 = type_space(3, 0, 1);
  CHECK(t3 == vee(literal("V2").linear(), MatSubspace::full(0, 1)));
  CHECK(t3.dim() == 6);
  CHECK(type_space(7, 0, 0) == literal("H4").linear());
  CHECK(type_space(7, 5, 0) == literal("H4").linear());
  CHECK_THROWS_AS(type_space(8, 0, 0), ArgumentError);
}

TEST_CASE("every type space has codimension 2n-3") {
  for (int type = 1; type <= 7; ++type) {
    for (std::size_t nb = 0; nb <= 2; ++nb) {
      for (std::size_t pb = 0; pb <= 2; ++pb) {
        const MatSubspace s = type_space(type, nb, pb);
        CHECK(s.codim() == 2 * s.rows() - 3);
        const auto [r, c] = type_shape(type, nb, pb);
        CHECK(s.rows() == r);
        CHECK(s.cols() == c);
      }
    }
  }
}

TEST_CASE("orthogonals of the listed spaces are the listed duals") {
  for (const char* name : {"G3", "H3", "I3", "H4"}) {
    const MatSubspace perp = orthogonal(literal(name).linear());
    CHECK(perp == literal(std::string(name) + "perp").linear());
  }
}

TEST_CASE("tabulated witnesses are range-compatible and not local") {
  for (int type = 1; type <= 7; ++type) {
    const MatSubspace s = type_space(type, 1, 1);
    const MapOnSpace g = MapOnSpace::from_formula(s, type_witness_formula(type, s.rows()));
    CHECK(is_range_compatible(s, g));
    CHECK_FALSE(is_local(s, g));
  }
}

TEST_CASE("parametric parser") {
  const ParametricSpace p = parametric(2, 2, {"a b", "b a+1"});
  CHECK(p.letters == "ab");
  CHECK(p.generators.size() == 2);
  CHECK(p.offset == (Word{1} << 3));
  CHECK_THROWS_AS(parametric(2, 2, {"a", "b a"}), Error);
}
