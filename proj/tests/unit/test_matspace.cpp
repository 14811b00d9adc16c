#include <random>
#include <unordered_set>

#include "doctest.h"
#include "oracles.hpp"
#include "rcf2/catalog.hpp"
#include "rcf2/equivalence.hpp"
#include "rcf2/error.hpp"
#include "rcf2/harness.hpp"
#include "rcf2/mat_space.hpp"
#include "rcf2/rank_geom.hpp"

using namespace rcf2;

namespace {

BitMatrix m(const std::vector<std::string>& rows) { return BitMatrix::from_strings(rows); }

}  // namespace

TEST_CASE("span") {
  const std::vector<BitMatrix> sym = {m({"10", "00"}), m({"01", "10"}), m({"00", "01"})};
  const MatSubspace s = MatSubspace::span(sym, 2, 2);
  CHECK(s.dim() == 3);
  CHECK(s == symmetric(2));
  CHECK(MatSubspace::span({}, 2, 2).dim() == 0);
  const std::vector<BitMatrix> twice = {m({"11", "01"}), m({"11", "01"})};
  CHECK(MatSubspace::span(twice, 2, 2).dim() == 1);
}

TEST_CASE("canonical basis makes equality independent of the generators") {
  const std::vector<BitMatrix> a = {m({"10", "00"}), m({"01", "10"})};
  const std::vector<BitMatrix> b = {m({"11", "10"}), m({"01", "10"})};
  CHECK(MatSubspace::span(a, 2, 2) == MatSubspace::span(b, 2, 2));
  CHECK(MatSubspaceHash{}(MatSubspace::span(a, 2, 2)) == MatSubspaceHash{}(MatSubspace::span(b, 2, 2)));
}

TEST_CASE("orthogonal") {
  const MatSubspace perp = orthogonal(symmetric(2));
  CHECK(perp == alternating(2));
  CHECK(perp.dim() == 1);
  CHECK(orthogonal(MatSubspace::full(2, 3)).dim() == 0);
  CHECK(orthogonal(MatSubspace(3, 2)) == MatSubspace::full(2, 3));
}

TEST_CASE("orthogonal matches the trace pairing and is an involution") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = uniform_index(rng, 1, 4), p = uniform_index(rng, 1, 4);
    const MatSubspace s = random_subspace(rng, n, p, uniform_index(rng, 0, n * p));
    const MatSubspace perp = orthogonal(s);
    REQUIRE(perp.dim() + s.dim() == n * p);
    REQUIRE(perp.rows() == p);
    REQUIRE(perp.cols() == n);
    for (const BitMatrix& a : s.basis()) {
      for (const BitMatrix& b : perp.basis()) {
        const BitMatrix ba = b * a;
        bool trace = false;
        for (std::size_t i = 0; i < p; ++i) trace ^= ba.get(i, i);
        REQUIRE_FALSE(trace);
      }
    }
    REQUIRE(orthogonal(perp) == s);
  }
}

TEST_CASE("vee") {
  const MatSubspace t1 = vee(symmetric(2), MatSubspace::full(1, 1));
  CHECK(t1.rows() == 3);
  CHECK(t1.cols() == 3);
  CHECK(t1.dim() == 6);
  CHECK(t1.codim() == 3);
  CHECK(vee(symmetric(2), MatSubspace::full(0, 0)) == symmetric(2));
  const MatSubspace v2 = literal("V2").linear();
  const MatSubspace t3 = vee(v2, MatSubspace::full(0, 1));
  CHECK(t3.rows() == 3);
  CHECK(t3.cols() == 3);
  CHECK(t3.dim() == 6);
}

TEST_CASE("coprod") {
  const MatSubspace t2 = coprod(symmetric(3), MatSubspace::full(3, 1));
  CHECK(t2.rows() == 3);
  CHECK(t2.cols() == 4);
  CHECK(t2.dim() == 9);
  CHECK(coprod(symmetric(3), MatSubspace(3, 0)) == symmetric(3));
  CHECK_THROWS_AS(coprod(symmetric(3), MatSubspace::full(2, 1)), ShapeError);
}

TEST_CASE("apply") {
  for (Word x = 1; x < 8; ++x) CHECK(apply(MatSubspace::full(2, 3), BitVector(3, x)).dim() == 2);
  CHECK(apply(literal("G3perp").linear(), BitVector::unit(3, 2)).dim() == 1);
  CHECK(apply(symmetric(3), BitVector(3)).dim() == 0);
  std::size_t small = 0;
  const MatSubspace g3p = literal("G3perp").linear();
  for (Word x = 1; x < 8; ++x) small += apply(g3p, BitVector(3, x)).dim() <= 1;
  CHECK(small == 1);
}

TEST_CASE("reduce") {
  const Reduction r = reduce(symmetric(2));
  CHECK(r.reduced == symmetric(2));
  CHECK(r.u0_dim == 0);
  CHECK(r.v0_dim == 2);

  const Reduction t = reduce(tilde(symmetric(2), 3, 3));
  CHECK(t.reduced == symmetric(2));
  CHECK(t.u0_dim == 1);
  CHECK(t.v0_dim == 2);

  const Reduction z = reduce(MatSubspace(2, 2));
  CHECK(z.reduced.rows() == 0);
  CHECK(z.reduced.cols() == 0);
  CHECK(z.u0_dim == 2);
  CHECK(z.v0_dim == 0);
}

TEST_CASE("reduce is idempotent and preserves dimension") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = uniform_index(rng, 1, 4), p = uniform_index(rng, 1, 4);
    const MatSubspace s = random_subspace(rng, n, p, uniform_index(rng, 0, std::min<std::size_t>(n * p, 4)));
    const Reduction r = reduce(s);
    REQUIRE(r.reduced.dim() == s.dim());
    REQUIRE(is_reduced(r.reduced));
    REQUIRE(r.reduced.cols() == p - r.u0_dim);
    REQUIRE(r.reduced.rows() == r.v0_dim);
    REQUIRE(reduce(r.reduced).reduced == r.reduced);
  }
}

TEST_CASE("hat") {
  const std::vector<BitMatrix> sym = {m({"10", "00"}), m({"01", "10"}), m({"00", "01"})};
  const MatSubspace h = hat_of(sym, 2, 2);
  CHECK(h.rows() == 2);
  CHECK(h.cols() == 3);
  CHECK(h.contains(m({"100", "010"})));
  CHECK(h.dim() == 2);
}

TEST_CASE("quotient_mod") {
  for (Word y = 1; y < 8; ++y) CHECK(quotient_mod(MatSubspace::full(3, 2), BitVector(3, y)) == MatSubspace::full(2, 2));
  const MatSubspace q = quotient_mod(literal("V2").linear(), BitVector::unit(3, 2));
  CHECK(are_equivalent(q, symmetric(2)));
  CHECK_THROWS_AS(quotient_mod(symmetric(2), BitVector(2)), ArgumentError);
}

TEST_CASE("quotient codimension identity") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = uniform_index(rng, 2, 4), p = uniform_index(rng, 1, 4);
    const MatSubspace s = random_subspace(rng, n, p, uniform_index(rng, 0, n * p));
    const MatSubspace perp = orthogonal(s);
    for (Word y = 1; y < (Word{1} << n); ++y) {
      REQUIRE(quotient_mod(s, BitVector(n, y)).codim() + apply(perp, BitVector(n, y)).dim() == s.codim());
    }
  }
}

TEST_CASE("element enumeration") {
  CHECK(oracle::elements(MatSubspace(2, 2)).size() == 1);
  const MatSubspace line = MatSubspace::span(std::vector<BitMatrix>{m({"11", "01"})}, 2, 2);
  CHECK(oracle::elements(line) == std::vector<Word>{0, m({"11", "01"}).flatten()});
  const auto sym = oracle::elements(symmetric(2));
  CHECK(sym.size() == 8);
  CHECK(std::unordered_set<Word>(sym.begin(), sym.end()).size() == 8);
  ElementEnumerator it(symmetric(2));
  std::size_t count = 0;
  while (it.next()) {
    CHECK(symmetric(2).contains(it.current()));
    ++count;
  }
  CHECK(count == 8);
}

TEST_CASE("subspace enumeration") {
  auto count = [](std::size_t n, std::size_t p, std::size_t k) {
    SubspaceEnumerator it(n, p, k);
    std::uint64_t c = 0;
    while (it.next()) ++c;
    return c;
  };
  CHECK(count(2, 2, 2) == 35);
  CHECK(count(2, 2, 0) == 1);
  CHECK(SubspaceEnumerator(3, 3, 6).total() == 788035);
  CHECK(gaussian_binomial(9, 3) == 788035);
  for (std::size_t k = 0; k <= 6; ++k) CHECK(count(2, 3, k) == gaussian_binomial(6, k));
}

TEST_CASE("subspace enumeration is distinct, dimension-correct and seekable") {
  SubspaceEnumerator it(2, 3, 3);
  std::vector<MatSubspace> all;
  std::unordered_set<MatSubspace, MatSubspaceHash> seen;
  while (it.next()) {
    REQUIRE(it.current().dim() == 3);
    REQUIRE(seen.insert(it.current()).second);
    all.push_back(it.current());
  }
  for (std::uint64_t start : {0u, 1u, 17u, 500u, 1394u}) {
    SubspaceEnumerator s(2, 3, 3);
    s.seek(start);
    REQUIRE(s.next());
    CHECK(s.current() == all[start]);
    CHECK(s.index() == start);
  }
}

TEST_CASE("transpose, sum and intersect") {
  const MatSubspace v2 = literal("V2").linear();
  CHECK(transpose_space(transpose_space(v2)) == v2);
  CHECK(transpose_space(symmetric(3)) == symmetric(3));
  CHECK(sum(symmetric(2), alternating(2)) == symmetric(2));
  CHECK(intersect(symmetric(3), alternating(3)) == alternating(3));
  CHECK(sum(symmetric(3), MatSubspace::full(3, 3)) == MatSubspace::full(3, 3));
}

TEST_CASE("common kernel and total image") {
  const MatSubspace t = tilde(symmetric(2), 3, 3);
  CHECK(common_kernel(t).dim() == 1);
  CHECK(total_image(t).dim() == 2);
  CHECK(total_image(alternating(3)).dim() == 3);
}
