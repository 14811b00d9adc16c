#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rcf2/catalog.hpp"
#include "rcf2/equivalence.hpp"
#include "rcf2/error.hpp"
#include "rcf2/harness.hpp"
#include "rcf2/range_compat.hpp"

using namespace rcf2;

TEST_CASE("profile examples") {
  const InvariantProfile a = profile(alternating(3));
  CHECK(a.dim == 3);
  CHECK(a.rank_counts[0] == 1);
  CHECK(a.rank_counts[1] == 0);
  CHECK(a.rank_counts[2] == 7);
  const InvariantProfile z = profile(MatSubspace(2, 3));
  CHECK(z.rank_counts[0] == 1);
  std::uint64_t total = 0;
  for (auto c : z.rank_counts) total += c;
  CHECK(total == 1);
}

TEST_CASE("are_equivalent examples") {
  const MatSubspace u3 = literal("U3").linear();
  CHECK_FALSE(are_equivalent(alternating(3), u3));
  const MatSubspace h3p = literal("H3perp").linear();
  const auto c = are_equivalent(h3p, u3);
  REQUIRE(c);
  CHECK(act(*c, h3p) == u3);
  const auto self = are_equivalent(u3, u3);
  REQUIRE(self);
  CHECK(act(*self, u3) == u3);
}

TEST_CASE("equivalence agrees with brute force and certificates verify") {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = uniform_index(rng, 1, 3), p = uniform_index(rng, 1, 3);
    const std::size_t d = uniform_index(rng, 0, n * p);
    const MatSubspace s = random_subspace(rng, n, p, d);
    const MatSubspace t = k % 2 ? random_subspace(rng, n, p, d)
                                : multiply(random_invertible(rng, n), s, random_invertible(rng, p));
    const auto c = are_equivalent(s, t);
    REQUIRE(c.has_value() == oracle::equivalent(s, t));
    if (c) REQUIRE(act(*c, s) == t);
  }
}

TEST_CASE("wide and tall spaces") {
  std::mt19937_64 rng(11);
  for (const auto& [n, p] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 5}, {5, 2}, {3, 4}, {4, 3}, {4, 4}}) {
    const MatSubspace s = random_subspace(rng, n, p, 5);
    const MatSubspace t = multiply(random_invertible(rng, n), s, random_invertible(rng, p));
    const auto c = are_equivalent(s, t);
    REQUIRE(c);
    CHECK(act(*c, s) == t);
  }
}

TEST_CASE("affine equivalence") {
  const AffineMatSpace ic = literal("IC").affine();
  const AffineMatSpace ij = literal("IJ").affine();
  CHECK_FALSE(are_equivalent(ic, ij));
  std::mt19937_64 rng(12);
  const Certificate c{random_invertible(rng, 2), random_invertible(rng, 2)};
  const AffineMatSpace moved = act(c, ic);
  const auto found = are_equivalent(ic, moved);
  REQUIRE(found);
  CHECK(act(*found, ic) == moved);
}

TEST_CASE("orbits") {
  CHECK(orbit(MatSubspace::full(2, 3)).size() == 1);
  CHECK(orbit(MatSubspace(3, 3)).size() == 1);
  const auto sym = orbit(symmetric(3));
  CHECK(sym.size() * stabilizer_size(symmetric(3)) == 168 * 168);
  SubspaceEnumerator it(2, 2, 1);
  std::uint64_t rank1 = 0;
  while (it.next()) rank1 += profile(it.current()).rank_counts[1] == 1;
  CHECK(orbit(MatSubspace::span(std::vector<BitMatrix>{BitMatrix::unit(2, 2, 0, 0)}, 2, 2)).size() == rank1);
}

TEST_CASE("orbit of an affine space matches stabilizer count") {
  const AffineMatSpace ic = literal("IC").affine();
  CHECK(orbit(ic).size() * stabilizer_size(ic) == 36);
}

TEST_CASE("classify_type examples") {
  const TypeReport sym = classify_type(symmetric(3));
  CHECK(sym.type_id == 2);
  const TypeReport h4 = classify_type(literal("H4").linear());
  CHECK(h4.type_id == 7);
  REQUIRE(h4.certificate);
  CHECK(act(*h4.certificate, literal("H4").linear()) == type_space(7, 0, 0));
  const TypeReport v2 = classify_type(literal("V2").linear());
  CHECK(v2.type_id == 3);
  CHECK(classify_type(alternating(3)).reason == "codimension precondition");

  std::mt19937_64 rng(13);
  int seen = 0;
  for (int k = 0; k < 200 && seen < 20; ++k) {
    const MatSubspace s = random_subspace(rng, 3, 3, 6);
    if (rc_defect(s) != 0) continue;
    ++seen;
    CHECK(classify_type(s).type_id == 0);
  }
}

TEST_CASE("type classification is invariant under the action") {
  std::mt19937_64 rng(14);
  for (int type = 1; type <= 7; ++type) {
    const MatSubspace rep = type_space(type, 0, 0);
    const MatSubspace moved = multiply(random_invertible(rng, rep.rows()), rep, random_invertible(rng, rep.cols()));
    const TypeReport t = classify_type(moved);
    CHECK(t.type_id == type);
    REQUIRE(t.certificate);
    CHECK(act(*t.certificate, moved) == rep);
  }
}
