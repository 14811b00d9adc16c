#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rcf2/catalog.hpp"
#include "rcf2/equivalence.hpp"
#include "rcf2/error.hpp"
#include "rcf2/harness.hpp"
#include "rcf2/rank_geom.hpp"

using namespace rcf2;

TEST_CASE("upper_rank examples") {
  CHECK(upper_rank(MatSubspace::full(3, 3)) == 3);
  CHECK(upper_rank(alternating(3)) == 2);
  CHECK(upper_rank(MatSubspace(3, 3)) == 0);
}

TEST_CASE("lower_rank examples") {
  CHECK(lower_rank(literal("IC").affine()) == 2);
  CHECK(lower_rank(literal("F3").affine()) == 2);
  CHECK(lower_rank(AffineMatSpace::from_flat(0, symmetric(3))) == 0);
  CHECK(lower_rank(literal("IJ").affine()) == 2);
}

TEST_CASE("upper and lower rank agree with brute force") {
  std::mt19937_64 rng(15);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = uniform_index(rng, 1, 4), p = uniform_index(rng, 1, 4);
    const MatSubspace s = random_subspace(rng, n, p, uniform_index(rng, 0, std::min<std::size_t>(n * p, 8)));
    const Word off = rng() & low_mask(n * p);
    std::size_t hi = 0, lo = 64;
    for (Word e : oracle::elements(s)) {
      hi = std::max(hi, oracle::flat_rank(e, n, p));
      lo = std::min(lo, oracle::flat_rank(e ^ off, n, p));
    }
    REQUIRE(upper_rank(s) == hi);
    REQUIRE(lower_rank(AffineMatSpace::from_flat(off, s)) == lo);
  }
}

TEST_CASE("i_np") {
  const AffineMatSpace ic = literal("IC").affine();
  const AffineMatSpace big = i_np(ic, 3, 3);
  CHECK(big.codim() == 3);
  CHECK(big.rows() == 3);
  CHECK(lower_rank(big) == 2);
  CHECK(i_np(ic, 2, 2) == ic);
  CHECK(i_np(symmetric(2), 2, 2) == symmetric(2));
  CHECK_THROWS_AS(i_np(symmetric(3), 2, 3), ShapeError);
}

TEST_CASE("tilde") {
  const MatSubspace t = tilde(symmetric(2), 3, 3);
  CHECK(t.dim() == 3);
  CHECK(t.rows() == 3);
  std::mt19937_64 rng(16);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = uniform_index(rng, 1, 3), p = uniform_index(rng, 1, 3);
    const MatSubspace x = random_subspace(rng, n, p, uniform_index(rng, 0, n * p));
    const MatSubspace tx = tilde(x, n + 1, p + 1);
    REQUIRE(tx.dim() == x.dim());
    const MatSubspace a = reduce(tx).reduced, b = reduce(x).reduced;
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    REQUIRE(are_equivalent(a, b));
  }
}

TEST_CASE("primitivity examples") {
  CHECK(is_primitive(alternating(3)));
  CHECK(is_primitive(literal("U3").linear()));
  CHECK_FALSE(is_primitive(literal("V2").linear()));
  for (const char* name : {"M1", "M2", "M3", "M4"}) CHECK(is_primitive(literal(name).linear()));
  CHECK_FALSE(is_primitive(tilde(alternating(3), 4, 4)));
}

TEST_CASE("corner compression") {
  const MatSubspace upper = MatSubspace::span(
      std::vector<BitMatrix>{BitMatrix::unit(3, 3, 0, 1), BitMatrix::unit(3, 3, 0, 2)}, 3, 3);
  CHECK(has_corner_compression(upper));
  CHECK_FALSE(has_corner_compression(alternating(3)));
}

TEST_CASE("affine census at 2x2") {
  const AffineCensus c = classify_affine_lrk2(2, 2);
  CHECK(c.classes.size() == 2);
  CHECK(c.ok());
  CHECK(c.complete);
  CHECK(c.survivors == 15);
}

TEST_CASE("affine census representatives and shards") {
  CHECK(affine_lrk2_representatives(3, 3).size() == 5);
  CHECK(affine_lrk2_representatives(2, 3).size() == 3);
  CHECK(affine_lrk2_representatives(3, 2).size() == 3);
  const AffineCensus whole = classify_affine_lrk2(2, 3);
  CHECK(whole.ok());
  std::uint64_t survivors = 0, directions = 0;
  for (std::size_t s = 0; s < 4; ++s) {
    const AffineCensus part = classify_affine_lrk2(2, 3, s, 4);
    CHECK(part.ok());
    CHECK_FALSE(part.complete);
    survivors += part.survivors;
    directions += part.directions;
  }
  CHECK(survivors == whole.survivors);
  CHECK(directions == whole.directions);
  CHECK_THROWS_AS(classify_affine_lrk2(2, 3, 4, 4), ArgumentError);
  CHECK_THROWS_AS(classify_affine_lrk2(4, 4), BoundError);
}

TEST_CASE("uniqueness property") {
  CHECK(check_uniqueness_prop(3, 3));
  CHECK(check_uniqueness_prop(2, 2));
  const AffineMatSpace ic = literal("IC").affine();
  CHECK(multiply(BitMatrix::identity(2), ic, BitMatrix::identity(2)) == ic);
}
