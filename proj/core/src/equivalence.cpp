#include "rcf2/equivalence.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <unordered_set>

#include "rcf2/catalog.hpp"
#include "rcf2/echelon.hpp"
#include "rcf2/error.hpp"

namespace rcf2 {

namespace {

constexpr std::size_t kMaxProfileDim = 14;
constexpr std::size_t kMaxSearchSide = 6;

Word apply_flat(Word s, std::size_t rows, std::size_t cols, Word x) noexcept {
  Word out = 0;
  const Word mask = low_mask(cols);
  for (std::size_t i = 0; i < rows; ++i) out |= Word(std::popcount((s >> (i * cols)) & mask & x) & 1) << i;
  return out;
}

Word transpose_word(Word v, std::size_t rows, std::size_t cols) {
  return BitMatrix::unflatten(rows, cols, v).transpose().flatten();
}

/// dim S x for every x != 0, as a histogram indexed by dimension.
std::vector<std::uint64_t> column_profile(std::span<const Word> basis, std::size_t rows, std::size_t cols) {
  if (cols > 16) throw BoundError("profile: at most 16 columns");
  std::vector<std::uint64_t> hist(rows + 1, 0);
  const Word total = Word{1} << cols;
  for (Word x = 1; x < total; ++x) {
    EchelonBasis images(rows);
    for (Word b : basis) images.insert(apply_flat(b, rows, cols, x));
    ++hist[images.rank()];
  }
  return hist;
}

std::vector<std::uint64_t> rank_histogram(const MatSubspace& s, Word offset) {
  std::vector<std::uint64_t> hist(std::min(s.rows(), s.cols()) + 1, 0);
  for_each_element(s, [&](Word e, Word) { ++hist[flat_rank(e ^ offset, s.rows(), s.cols())]; });
  return hist;
}

InvariantProfile fingerprint(const MatSubspace& s, bool with_ranks) {
  InvariantProfile out;
  out.dim = s.dim();
  if (with_ranks) out.rank_counts = rank_histogram(s, 0);
  out.col_profile = column_profile(s.flat_basis(), s.rows(), s.cols());
  const MatSubspace t = transpose_space(s);
  out.row_profile = column_profile(t.flat_basis(), t.rows(), t.cols());
  out.u0_dim = common_kernel(s).dim();
  out.v0_dim = total_image(s).dim();
  return out;
}

/// Backtracking search for (P, R) with P S R = T, P over GL_n and the
/// columns of R chosen one at a time. Requires n <= 4 and p <= 6.
///
/// With column-major coordinates, the first c columns of P s R depend only on
/// r_1..r_c and must lie in the projection of T onto its first c columns.
/// The optional offset must instead land in the projected coset.
class PairSearch {
 public:
  using Visitor = std::function<bool(const BitMatrix& p, const BitMatrix& r)>;

  PairSearch(std::size_t rows, std::size_t cols, std::vector<Word> source, bool source_affine, Word source_offset,
             const MatSubspace& target, Word target_offset)
      : n_(rows), p_(cols), source_(std::move(source)), affine_(source_affine), source_offset_(source_offset) {
    if (affine_) source_.push_back(source_offset_);
    prefix_.reserve(p_ + 1);
    for (std::size_t c = 0; c <= p_; ++c) {
      EchelonBasis e(n_ * p_);
      const Word mask = low_mask(c * n_);
      for (Word v : target.flat_basis()) e.insert(to_column_major(v) & mask);
      prefix_.push_back(e);
    }
    target_offset_cm_ = to_column_major(target_offset);
  }

  /// Visits solutions until the visitor returns false.
  void run(const Visitor& visit) {
    visit_ = &visit;
    const std::size_t d = source_.size();
    acc_.assign(p_ + 1, std::vector<Word>(d, 0));
    table_.assign(d, std::vector<Word>(std::size_t{1} << p_, 0));
    columns_.assign(p_, 0);
    stop_ = false;
    GlEnumerator gl(n_);
    while (!stop_ && gl.next()) {
      const BitMatrix& left = gl.current();
      for (std::size_t j = 0; j < d; ++j) {
        const Word ps = multiply_flat(left, source_[j], n_, p_, BitMatrix::identity(p_));
        for (Word r = 0; r < (Word{1} << p_); ++r) table_[j][r] = apply_flat(ps, n_, p_, r);
      }
      current_left_ = &left;
      descend(0, Word{1});
    }
  }

 private:
  Word to_column_major(Word v) const noexcept {
    Word out = 0;
    while (v) {
      const std::size_t k = static_cast<std::size_t>(std::countr_zero(v));
      out |= Word{1} << ((k % p_) * n_ + k / p_);
      v &= v - 1;
    }
    return out;
  }

  // `span` is the set of vectors spanned by the chosen columns, as a bitmask over F2^p.
  void descend(std::size_t c, Word span) {
    if (c == p_) {
      BitMatrix right(p_, p_);
      for (std::size_t k = 0; k < p_; ++k) {
        for (std::size_t i = 0; i < p_; ++i) right.set(i, k, (columns_[k] >> i) & 1U);
      }
      if (!(*visit_)(*current_left_, right)) stop_ = true;
      return;
    }
    const std::size_t d = source_.size();
    const EchelonBasis& proj = prefix_[c + 1];
    const Word off_mask = low_mask((c + 1) * n_);
    const Word total = Word{1} << p_;
    for (Word r = 1; r < total && !stop_; ++r) {
      if ((span >> r) & 1U) continue;
      bool ok = true;
      for (std::size_t j = 0; j < d && ok; ++j) {
        const Word v = acc_[c][j] | (table_[j][r] << (c * n_));
        acc_[c + 1][j] = v;
        const bool is_offset = affine_ && j + 1 == d;
        ok = proj.reduce(is_offset ? v ^ (target_offset_cm_ & off_mask) : v) == 0;
      }
      if (!ok) continue;
      Word next = span;
      for (Word m = span; m; m &= m - 1) next |= Word{1} << (static_cast<Word>(std::countr_zero(m)) ^ r);
      columns_[c] = r;
      descend(c + 1, next);
    }
  }

  std::size_t n_, p_;
  std::vector<Word> source_;
  bool affine_;
  Word source_offset_;
  std::vector<EchelonBasis> prefix_;
  Word target_offset_cm_ = 0;
  std::vector<std::vector<Word>> acc_;
  std::vector<std::vector<Word>> table_;
  std::vector<Word> columns_;
  const BitMatrix* current_left_ = nullptr;
  const Visitor* visit_ = nullptr;
  bool stop_ = false;
};

struct Problem {
  std::size_t rows, cols;
  std::vector<Word> source;
  bool affine;
  Word source_offset;
  MatSubspace target;
  Word target_offset;
};

void check_search_shape(std::size_t rows, std::size_t cols) {
  if (std::min(rows, cols) > 4 || std::max(rows, cols) > kMaxSearchSide) {
    throw BoundError("equivalence search needs min(n, p) <= 4 and max(n, p) <= 6, got " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
}

Problem transposed(const Problem& pr) {
  Problem out{pr.cols, pr.rows, {}, pr.affine, transpose_word(pr.source_offset, pr.rows, pr.cols),
              transpose_space(pr.target), transpose_word(pr.target_offset, pr.rows, pr.cols)};
  for (Word v : pr.source) out.source.push_back(transpose_word(v, pr.rows, pr.cols));
  return out;
}

/// Runs the search on whichever orientation has fewer rows; the visitor
/// always receives (P, R) with P S R = T in the original orientation.
void search_pairs(const Problem& pr, const PairSearch::Visitor& visit) {
  check_search_shape(pr.rows, pr.cols);
  if (pr.rows <= pr.cols) {
    PairSearch search(pr.rows, pr.cols, pr.source, pr.affine, pr.source_offset, pr.target, pr.target_offset);
    search.run(visit);
    return;
  }
  const Problem t = transposed(pr);
  PairSearch search(t.rows, t.cols, t.source, t.affine, t.source_offset, t.target, t.target_offset);
  // P' S^T R' = T^T  <=>  R'^T S P'^T = T
  search.run([&](const BitMatrix& p, const BitMatrix& r) { return visit(r.transpose(), p.transpose()); });
}

Certificate make_certificate(const BitMatrix& p, const BitMatrix& r) { return Certificate{p, *inverse(r)}; }

Problem linear_problem(const MatSubspace& s, const MatSubspace& t) {
  return Problem{s.rows(), s.cols(), std::vector<Word>(s.flat_basis().begin(), s.flat_basis().end()), false, 0, t, 0};
}

Problem affine_problem(const AffineMatSpace& s, const AffineMatSpace& t) {
  return Problem{s.rows(),
                 s.cols(),
                 std::vector<Word>(s.direction().flat_basis().begin(), s.direction().flat_basis().end()),
                 true,
                 s.offset_flat(),
                 t.direction(),
                 t.offset_flat()};
}

template <typename Space, typename Hash, typename Step>
std::vector<Space> bfs(const Space& start, Step&& step) {
  std::vector<Space> order{start};
  std::unordered_set<Space, Hash> seen{start};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Space current = order[head];
    step(current, [&](Space next) {
      if (seen.insert(next).second) order.push_back(std::move(next));
    });
  }
  return order;
}

}  // namespace

InvariantProfile profile(const MatSubspace& s) {
  if (s.dim() > kMaxProfileDim) throw BoundError("profile: dim S must be at most 14, got " + std::to_string(s.dim()));
  return fingerprint(s, true);
}

MatSubspace act(const Certificate& c, const MatSubspace& s) {
  const auto q_inv = inverse(c.q);
  if (!q_inv) throw ArgumentError("certificate: Q is not invertible");
  return multiply(c.p, s, *q_inv);
}

AffineMatSpace act(const Certificate& c, const AffineMatSpace& a) {
  const auto q_inv = inverse(c.q);
  if (!q_inv) throw ArgumentError("certificate: Q is not invertible");
  return multiply(c.p, a, *q_inv);
}

std::optional<Certificate> are_equivalent(const MatSubspace& s, const MatSubspace& t) {
  if (s.rows() != t.rows() || s.cols() != t.cols()) throw ShapeError("are_equivalent: ambient shapes differ");
  if (s.ambient_dim() == 0) return Certificate{BitMatrix::identity(s.rows()), BitMatrix::identity(s.cols())};
  check_search_shape(s.rows(), s.cols());
  if (s.dim() != t.dim()) return std::nullopt;
  const bool with_ranks = s.dim() <= 16;
  if (!(fingerprint(s, with_ranks) == fingerprint(t, with_ranks))) return std::nullopt;
  std::optional<Certificate> found;
  search_pairs(linear_problem(s, t), [&](const BitMatrix& p, const BitMatrix& r) {
    found = make_certificate(p, r);
    return false;
  });
  return found;
}

std::optional<Certificate> are_equivalent(const AffineMatSpace& s, const AffineMatSpace& t) {
  if (s.rows() != t.rows() || s.cols() != t.cols()) throw ShapeError("are_equivalent: ambient shapes differ");
  check_search_shape(s.rows(), s.cols());
  if (s.dim() != t.dim() || s.contains_zero() != t.contains_zero()) return std::nullopt;
  if (s.dim() <= 16 &&
      rank_histogram(s.direction(), s.offset_flat()) != rank_histogram(t.direction(), t.offset_flat())) {
    return std::nullopt;
  }
  if (!(fingerprint(s.direction(), false) == fingerprint(t.direction(), false))) return std::nullopt;
  std::optional<Certificate> found;
  search_pairs(affine_problem(s, t), [&](const BitMatrix& p, const BitMatrix& r) {
    found = make_certificate(p, r);
    return false;
  });
  return found;
}

std::uint64_t stabilizer_size(const MatSubspace& s) {
  if (s.ambient_dim() == 0) return gl_order(s.rows()) * gl_order(s.cols());
  std::uint64_t count = 0;
  search_pairs(linear_problem(s, s), [&](const BitMatrix&, const BitMatrix&) {
    ++count;
    return true;
  });
  return count;
}

std::uint64_t stabilizer_size(const AffineMatSpace& a) {
  std::uint64_t count = 0;
  search_pairs(affine_problem(a, a), [&](const BitMatrix&, const BitMatrix&) {
    ++count;
    return true;
  });
  return count;
}

std::vector<BitMatrix> gl_generators(std::size_t k) {
  if (k == 0) throw ArgumentError("gl_generators: k must be positive");
  if (k == 1) return {};
  BitMatrix transvection = BitMatrix::identity(k);
  transvection.set(0, 1, true);
  BitMatrix cycle(k, k);
  for (std::size_t i = 0; i < k; ++i) cycle.set((i + 1) % k, i, true);
  return {transvection, cycle};
}

std::vector<MatSubspace> orbit(const MatSubspace& s, const std::vector<BitMatrix>& left,
                               const std::vector<BitMatrix>& right) {
  const BitMatrix id_left = BitMatrix::identity(s.rows());
  const BitMatrix id_right = BitMatrix::identity(s.cols());
  return bfs<MatSubspace, MatSubspaceHash>(s, [&](const MatSubspace& cur, auto&& emit) {
    for (const BitMatrix& l : left) emit(multiply(l, cur, id_right));
    for (const BitMatrix& r : right) emit(multiply(id_left, cur, r));
  });
}

std::vector<MatSubspace> orbit(const MatSubspace& s) {
  if (s.rows() > 4 || s.cols() > 4) throw BoundError("orbit: at most 4 rows and columns");
  return orbit(s, gl_generators(s.rows()), gl_generators(s.cols()));
}

std::vector<AffineMatSpace> orbit(const AffineMatSpace& a) {
  if (a.rows() > 4 || a.cols() > 4) throw BoundError("orbit: at most 4 rows and columns");
  const auto left = gl_generators(a.rows());
  const auto right = gl_generators(a.cols());
  const BitMatrix id_left = BitMatrix::identity(a.rows());
  const BitMatrix id_right = BitMatrix::identity(a.cols());
  return bfs<AffineMatSpace, AffineMatSpaceHash>(a, [&](const AffineMatSpace& cur, auto&& emit) {
    for (const BitMatrix& l : left) emit(multiply(l, cur, id_right));
    for (const BitMatrix& r : right) emit(multiply(id_left, cur, r));
  });
}

TypeReport classify_type(const MatSubspace& s) {
  TypeReport report;
  const std::size_t n = s.rows();
  if (2 * n < 3 || s.codim() != 2 * n - 3) {
    report.reason = "codimension precondition";
    return report;
  }
  for (int type = 1; type <= 7; ++type) {
    const auto params = type_params(type, s.rows(), s.cols());
    if (!params) continue;
    const MatSubspace rep = type_space(type, params->first, params->second);
    if (rep.dim() != s.dim()) continue;
    if (auto cert = are_equivalent(s, rep)) {
      report.type_id = type;
      report.n_block = params->first;
      report.p_block = params->second;
      report.certificate = std::move(cert);
      report.reason = "equivalent to the Type " + std::to_string(type) + " representative";
      return report;
    }
  }
  report.reason = "inequivalent to every type representative of this shape";
  return report;
}

}  // namespace rcf2
