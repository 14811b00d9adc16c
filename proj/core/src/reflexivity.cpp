#include "rcf2/reflexivity.hpp"

#include "rcf2/catalog.hpp"
#include "rcf2/echelon.hpp"
#include "rcf2/equivalence.hpp"
#include "rcf2/error.hpp"

namespace rcf2 {

namespace {

Word apply_flat(Word s, std::size_t rows, std::size_t cols, Word x) noexcept {
  Word out = 0;
  const Word mask = low_mask(cols);
  for (std::size_t i = 0; i < rows; ++i) out |= Word(std::popcount((s >> (i * cols)) & mask & x) & 1) << i;
  return out;
}

Word outer(Word k, Word x, std::size_t cols) noexcept {
  Word out = 0;
  while (k) {
    out |= x << (static_cast<std::size_t>(std::countr_zero(k)) * cols);
    k &= k - 1;
  }
  return out;
}

}  // namespace

MatSubspace reflexive_closure(const MatSubspace& s) {
  const std::size_t n = s.rows(), p = s.cols();
  if (p > 20) throw BoundError("reflexive_closure: p must be at most 20, got " + std::to_string(p));
  const std::size_t target = s.codim();  // constraint rank at which R(S) = S
  EchelonBasis constraints(n * p);
  const Word total = Word{1} << p;
  for (Word x = 1; x < total && constraints.rank() < target; ++x) {
    EchelonBasis image(n);
    for (Word b : s.flat_basis()) image.insert(apply_flat(b, n, p, x));
    for (Word k : image.annihilator()) constraints.insert(outer(k, x, p));
  }
  return MatSubspace::from_flat(n, p, constraints.annihilator());
}

std::size_t reflexivity_defect(const MatSubspace& s) { return reflexive_closure(s).dim() - s.dim(); }

MatSubspace rank_one_span(const MatSubspace& s) {
  if (s.dim() > 20) throw BoundError("rank_one_span: dim S must be at most 20");
  std::vector<Word> rank_one;
  EchelonBasis span(s.ambient_dim());
  for_each_element(s, [&](Word e, Word) {
    if (e && flat_rank(e, s.rows(), s.cols()) == 1 && span.insert(e)) rank_one.push_back(e);
  });
  return MatSubspace::from_flat(s.rows(), s.cols(), rank_one);
}

const char* to_string(TwoDimCase c) {
  switch (c) {
    case TwoDimCase::Reflexive: return "reflexive";
    case TwoDimCase::SquareFewRankOne: return "square-few-rank-one";
    case TwoDimCase::E2: return "E2";
    case TwoDimCase::E3: return "E3";
    case TwoDimCase::E2Transposed: return "E2T";
  }
  return "?";
}

TwoDimCase predicted_2dim_case(const MatSubspace& s) {
  if (s.dim() != 2 || !is_reduced(s)) throw ArgumentError("predicted_2dim_case: expects a reduced 2-dimensional space");
  const std::size_t n = s.rows(), p = s.cols();
  if (n == 2 && p == 2) {
    std::size_t rank_one = 0;
    for_each_element(s, [&](Word e, Word) { rank_one += e && flat_rank(e, n, p) == 1; });
    if (rank_one <= 1) return TwoDimCase::SquareFewRankOne;
  }
  const MatSubspace e2 = literal("E2").linear();
  if (n == 2 && p == 3 && are_equivalent(s, e2)) return TwoDimCase::E2;
  if (n == 3 && p == 3 && are_equivalent(s, literal("E3").linear())) return TwoDimCase::E3;
  if (n == 3 && p == 2 && are_equivalent(s, transpose_space(e2))) return TwoDimCase::E2Transposed;
  return TwoDimCase::Reflexive;
}

TwoDimReport check_2dim_theorem(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1 || rows > 3 || cols > 3) {
    throw BoundError("check_2dim_theorem: needs 1 <= n, p <= 3");
  }
  TwoDimReport report;
  report.rows = rows;
  report.cols = cols;
  if (rows * cols < 2) return report;
  SubspaceEnumerator it(rows, cols, 2);
  while (it.next()) {
    const MatSubspace& s = it.current();
    if (!is_reduced(s)) continue;
    ++report.reduced_spaces;
    const TwoDimCase c = predicted_2dim_case(s);
    ++report.case_counts[c];
    const std::size_t defect = reflexivity_defect(s);
    bool ok = true;
    switch (c) {
      case TwoDimCase::Reflexive: ok = defect == 0; break;
      case TwoDimCase::SquareFewRankOne:
        ok = defect > 0;
        ++report.square_case_defects[defect];
        break;
      default: ok = defect == 1; break;
    }
    if (!ok) report.violations.push_back(s);
  }
  return report;
}

}  // namespace rcf2
