#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rcf2/catalog.hpp"
#include "rcf2/error.hpp"
#include "rcf2/harness.hpp"
#include "rcf2/range_compat.hpp"

using namespace rcf2;

namespace {

std::size_t log2_exact(std::uint64_t v) {
  std::size_t d = 0;
  while ((std::uint64_t{1} << d) < v) ++d;
  return d;
}

}  // namespace

TEST_CASE("rc_space examples") {
  const MatSubspace full = MatSubspace::full(2, 2);
  CHECK(rc_space(full) == loc_space(full));
  CHECK(rc_space(full).dim() == 2);
  CHECK(rc_space(symmetric(2)).dim() == 3);
  CHECK(rc_space(MatSubspace(1, 1)).dim() == 0);
}

TEST_CASE("loc_space examples") {
  CHECK(loc_space(symmetric(2)).dim() == 2);
  CHECK(loc_space(MatSubspace(2, 3)).dim() == 0);
}

TEST_CASE("rc_space and loc_space agree with brute force on small spaces") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 150; ++k) {
    const std::size_t n = uniform_index(rng, 1, 3), p = uniform_index(rng, 1, 3);
    const std::size_t d = uniform_index(rng, 0, std::min<std::size_t>(n * p, 12 / n));
    const MatSubspace s = random_subspace(rng, n, p, d);
    REQUIRE(rc_space(s).dim() == log2_exact(oracle::count_rc_maps(s)));
    REQUIRE(loc_space(s).dim() == log2_exact(oracle::count_local_maps(s)));
  }
}

TEST_CASE("rc_defect examples") {
  for (int type = 1; type <= 7; ++type) CHECK(rc_defect(type_space(type, 0, 0)) == 1);
  CHECK(rc_defect(MatSubspace::full(3, 3)) == 0);
  CHECK(rc_defect(MatSubspace::full(2, 4)) == 0);
}

TEST_CASE("a vector with dim Sx <= 1 and codim <= 2n-3 forces defect 0") {
  std::mt19937_64 rng(6);
  std::size_t tested = 0;
  for (int k = 0; k < 3000 && tested < 100; ++k) {
    const std::size_t n = 3, p = 3;
    const MatSubspace s = random_subspace(rng, n, p, uniform_index(rng, 6, 9));
    bool has_small = false;
    for (Word x = 1; x < 8; ++x) has_small = has_small || apply(s, BitVector(3, x)).dim() <= 1;
    if (!has_small) continue;
    ++tested;
    REQUIRE(rc_defect(s) == 0);
  }
  CHECK(tested > 0);
}

TEST_CASE("is_range_compatible") {
  const MatSubspace v2 = literal("V2").linear();
  const MapOnSpace g = MapOnSpace::from_formula(v2, [](const BitMatrix& m) {
    BitVector v(3);
    v.set(1, m.get(1, 0) ^ m.get(1, 1));
    return v;
  });
  CHECK(is_range_compatible(v2, g));
  CHECK(is_range_compatible(v2, MapOnSpace::zero(v2)));
  const MapOnSpace off_diag = MapOnSpace::from_formula(symmetric(2), [](const BitMatrix& m) {
    BitVector v(2);
    v.set(0, m.get(0, 1));
    return v;
  });
  CHECK_FALSE(is_range_compatible(symmetric(2), off_diag));
}

TEST_CASE("is_local") {
  const MatSubspace s = symmetric(3);
  const BitVector x = BitVector::from_string("101");
  const auto found = is_local(s, MapOnSpace::local(s, x));
  REQUIRE(found);
  CHECK(MapOnSpace::local(s, *found) == MapOnSpace::local(s, x));
  const MapOnSpace diag = MapOnSpace::from_formula(symmetric(2), [](const BitMatrix& m) {
    BitVector v(2);
    v.set(0, m.get(0, 0));
    v.set(1, m.get(1, 1));
    return v;
  });
  CHECK(is_range_compatible(symmetric(2), diag));
  CHECK_FALSE(is_local(symmetric(2), diag));
  const auto zero = is_local(s, MapOnSpace::zero(s));
  REQUIRE(zero);
  CHECK(MapOnSpace::local(s, *zero) == MapOnSpace::zero(s));
}

TEST_CASE("witness_nonlocal") {
  const MatSubspace v2 = literal("V2").linear();
  const auto w = witness_nonlocal(v2);
  REQUIRE(w);
  const MapOnSpace g = MapOnSpace::from_formula(v2, type_witness_formula(3, 3));
  CHECK(w->flat_coeffs() == normalize_modulo_local(v2, g.flat_coeffs()));

  const MatSubspace h4 = literal("H4").linear();
  const auto wh = witness_nonlocal(h4);
  REQUIRE(wh);
  const MapOnSpace gh = MapOnSpace::from_formula(h4, [](const BitMatrix& m) {
    const bool t = m.get(0, 0) ^ m.get(1, 0) ^ m.get(2, 0);
    return BitVector(3, t ? 7 : 0);
  });
  CHECK(is_range_compatible(h4, gh));
  CHECK(wh->flat_coeffs() == normalize_modulo_local(h4, gh.flat_coeffs()));
  CHECK_FALSE(witness_nonlocal(MatSubspace::full(3, 3)));
}

TEST_CASE("analyze_rc is consistent") {
  const RcAnalysis a = analyze_rc(literal("V2").linear());
  CHECK(a.defect == 1);
  CHECK(a.rc.dim() == a.loc.dim() + 1);
  CHECK(a.loc.is_subspace_of(a.rc));
}

TEST_CASE("projection of range-compatible maps to the quotient") {
  const MatSubspace s = literal("V2").linear();
  const MatSubspace rc = rc_space(s);
  for (Word y = 1; y < 8; ++y) {
    const MatSubspace q = quotient_mod(s, BitVector(3, y));
    for (Word f : rc.flat_basis()) {
      const auto pf = project_map(s, MapOnSpace::from_flat(s, f), BitVector(3, y));
      REQUIRE(pf);
      CHECK(is_range_compatible(q, *pf));
    }
  }
}

TEST_CASE("map text round trip") {
  const MatSubspace v2 = literal("V2").linear();
  const auto w = witness_nonlocal(v2);
  REQUIRE(w);
  CHECK(parse_map(emit_map(*w), v2) == *w);
}

TEST_CASE("bounds are reported") {
  CHECK_THROWS_AS(rc_space(MatSubspace::full(4, 4)), BoundError);
}
