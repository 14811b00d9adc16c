#include <unordered_set>

#include "doctest.h"
#include "oracles.hpp"
#include "rcf2/bit_matrix.hpp"
#include "rcf2/error.hpp"

using namespace rcf2;

TEST_CASE("rank of identity, a rank-3 matrix and a zero matrix") {
  CHECK(rank(BitMatrix::identity(3)) == 3);
  CHECK(rank(BitMatrix::from_strings({"100", "010", "111"})) == 3);
  CHECK(rank(BitMatrix(2, 5)) == 0);
}

TEST_CASE("rank agrees with the row-space oracle on all of Mat_3 and Mat_{2,4}") {
  for (Word m = 0; m < 512; ++m) {
    const BitMatrix a = BitMatrix::unflatten(3, 3, m);
    REQUIRE(rank(a) == oracle::rank(a));
    REQUIRE(rank(a.transpose()) == rank(a));
  }
  for (Word m = 0; m < 256; ++m) REQUIRE(rank(BitMatrix::unflatten(2, 4, m)) == oracle::flat_rank(m, 2, 4));
}

TEST_CASE("rank on wide and tall matrices") {
  BitMatrix wide(3, 64);
  wide.set(0, 63, true);
  wide.set(1, 0, true);
  wide.set(2, 0, true);
  wide.set(2, 63, true);
  CHECK(rank(wide) == 2);
  BitMatrix tall(70, 2);
  tall.set(65, 0, true);
  tall.set(3, 1, true);
  CHECK(rank(tall) == 2);
}

TEST_CASE("rref examples") {
  const RrefResult id = rref(BitMatrix::identity(3));
  CHECK(id.reduced == BitMatrix::identity(3));
  CHECK(id.pivot_cols == std::vector<std::size_t>{0, 1, 2});
  CHECK(id.row_transform == BitMatrix::identity(3));

  const RrefResult ones = rref(BitMatrix::from_strings({"11", "11"}));
  CHECK(ones.reduced == BitMatrix::from_strings({"11", "00"}));
  CHECK(ones.pivot_cols == std::vector<std::size_t>{0});

  const RrefResult swap = rref(BitMatrix::from_strings({"01", "10"}));
  CHECK(swap.reduced == BitMatrix::from_strings({"10", "01"}));
  CHECK(swap.pivot_cols == std::vector<std::size_t>{0, 1});
}

TEST_CASE("rref is idempotent and the transform is invertible") {
  for (Word m = 0; m < 4096; m += 7) {
    const BitMatrix a = BitMatrix::unflatten(3, 4, m);
    const RrefResult r = rref(a);
    REQUIRE(r.row_transform * a == r.reduced);
    REQUIRE(rank(r.row_transform) == 3);
    REQUIRE(rref(r.reduced).reduced == r.reduced);
  }
}

TEST_CASE("nullspace examples") {
  CHECK(nullspace(BitMatrix::identity(3)).empty());
  CHECK(nullspace(BitMatrix(2, 3)).size() == 3);
  const auto ns = nullspace(BitMatrix::from_strings({"110", "011"}));
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == BitVector::from_string("111"));
}

TEST_CASE("left kernel examples") {
  CHECK(left_kernel(BitMatrix::identity(3)).empty());
  const auto k = left_kernel(BitMatrix::unit(3, 3, 0, 0));
  REQUIRE(k.size() == 2);
  for (const auto& y : k) CHECK_FALSE(y.get(0));
  const auto k2 = left_kernel(BitMatrix::from_strings({"10", "10", "01"}));
  REQUIRE(k2.size() == 1);
  CHECK(k2[0] == BitVector::from_string("110"));
}

TEST_CASE("nullspace vectors are annihilated and have the right count") {
  for (Word m = 0; m < 4096; m += 5) {
    const BitMatrix a = BitMatrix::unflatten(4, 3, m);
    const auto ns = nullspace(a);
    REQUIRE(ns.size() + rank(a) == 3);
    for (const auto& v : ns) REQUIRE((a * v).is_zero());
  }
}

TEST_CASE("GL enumeration yields |GL_n| distinct invertible matrices") {
  const std::uint64_t expected[] = {1, 1, 6, 168, 20160};
  for (std::size_t n = 1; n <= 4; ++n) {
    GlEnumerator g(n);
    std::unordered_set<Word> seen;
    while (g.next()) {
      REQUIRE(rank(g.current()) == n);
      REQUIRE(seen.insert(g.current().flatten()).second);
    }
    CHECK(seen.size() == expected[n]);
    CHECK(gl_order(n) == expected[n]);
    CHECK(gl_group(n).size() == expected[n]);
  }
}

TEST_CASE("inverse") {
  for (const BitMatrix& m : gl_group(3)) {
    const auto inv = inverse(m);
    REQUIRE(inv);
    REQUIRE(m * *inv == BitMatrix::identity(3));
  }
  CHECK_FALSE(inverse(BitMatrix::from_strings({"11", "11"})));
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(BitMatrix(2, 65), BoundError);
  CHECK_THROWS_AS(BitMatrix::identity(2) * BitMatrix::identity(3), ShapeError);
  CHECK_THROWS_AS(BitMatrix::from_strings({"10", "1"}), Error);
}
