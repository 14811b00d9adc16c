#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rcf2/catalog.hpp"
#include "rcf2/harness.hpp"
#include "rcf2/range_compat.hpp"
#include "rcf2/reflexivity.hpp"

using namespace rcf2;

TEST_CASE("reflexive_closure examples") {
  CHECK(reflexive_closure(MatSubspace::full(2, 3)) == MatSubspace::full(2, 3));
  const std::vector<BitMatrix> gens = {BitMatrix::identity(2), BitMatrix::from_strings({"01", "00"})};
  const MatSubspace s = MatSubspace::span(gens, 2, 2);
  const MatSubspace closure = reflexive_closure(s);
  CHECK(closure.dim() == 3);
  for (Word g = 0; g < 16; ++g) {
    const BitMatrix mg = BitMatrix::unflatten(2, 2, g);
    CHECK(closure.contains(mg) == !mg.get(1, 0));
  }
  CHECK(reflexive_closure(literal("E2").linear()).dim() == 3);
}

TEST_CASE("reflexivity_defect examples") {
  CHECK(reflexivity_defect(literal("E3").linear()) == 1);
  CHECK(reflexivity_defect(transpose_space(literal("E2").linear())) == 1);
  SubspaceEnumerator it(2, 2, 1);
  while (it.next()) CHECK(reflexivity_defect(it.current()) == 0);
}

TEST_CASE("reflexive closure agrees with brute force") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = uniform_index(rng, 1, 3), p = uniform_index(rng, 1, 3);
    const MatSubspace s = random_subspace(rng, n, p, uniform_index(rng, 0, n * p));
    const MatSubspace closure = reflexive_closure(s);
    REQUIRE(s.is_subspace_of(closure));
    REQUIRE(closure.dim() == oracle::reflexive_closure_dim(s));
  }
}

TEST_CASE("duality identity and transpose invariance") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = uniform_index(rng, 1, 4), p = uniform_index(rng, 1, 4);
    const MatSubspace s = random_subspace(rng, n, p, uniform_index(rng, 0, n * p));
    REQUIRE(reflexivity_defect(s) == rc_defect(hat(s)));
    REQUIRE(reflexivity_defect(s) == reflexivity_defect(transpose_space(s)));
  }
}

TEST_CASE("rank-one span and the orthogonal defect identity") {
  CHECK(rank_one_span(MatSubspace::full(2, 2)) == MatSubspace::full(2, 2));
  CHECK(rank_one_span(alternating(3)).dim() == 0);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = uniform_index(rng, 1, 3), p = uniform_index(rng, 1, 3);
    const MatSubspace v = random_subspace(rng, n, p, uniform_index(rng, 0, n * p));
    REQUIRE(reflexivity_defect(orthogonal(v)) == v.dim() - rank_one_span(v).dim());
  }
}

TEST_CASE("two-dimensional theorem") {
  const TwoDimReport r22 = check_2dim_theorem(2, 2);
  CHECK(r22.ok());
  CHECK(r22.case_counts.count(TwoDimCase::SquareFewRankOne) == 1);
  const TwoDimReport r23 = check_2dim_theorem(2, 3);
  CHECK(r23.ok());
  CHECK(r23.case_counts.at(TwoDimCase::E2) > 0);
  CHECK(predicted_2dim_case(literal("E2").linear()) == TwoDimCase::E2);
  CHECK(predicted_2dim_case(literal("E3").linear()) == TwoDimCase::E3);
  CHECK(predicted_2dim_case(transpose_space(literal("E2").linear())) == TwoDimCase::E2Transposed);
}
