#include "rcf2/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "rcf2/catalog.hpp"
#include "rcf2/echelon.hpp"
#include "rcf2/equivalence.hpp"
#include "rcf2/error.hpp"
#include "rcf2/range_compat.hpp"
#include "rcf2/rank_geom.hpp"
#include "rcf2/reflexivity.hpp"
#include "rcf2/text_format.hpp"

namespace rcf2 {

bool SuiteReport::pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

void SuiteReport::check(std::string name, bool ok, std::string detail) {
  checks.push_back(CheckResult{std::move(name), ok, std::move(detail)});
}

void SuiteReport::metric(std::string key, std::string value) { metrics.emplace_back(std::move(key), std::move(value)); }

void SuiteReport::metric(std::string key, std::uint64_t value) { metric(std::move(key), std::to_string(value)); }

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (static_cast<std::uint64_t>(hi - lo) + 1));
}

MatSubspace random_subspace(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t dim) {
  const std::size_t length = rows * cols;
  if (dim > length) throw ArgumentError("random_subspace: dimension exceeds the ambient dimension");
  EchelonBasis basis(length);
  std::vector<Word> gens;
  while (basis.rank() < dim) {
    const Word v = rng() & low_mask(length);
    if (basis.insert(v)) gens.push_back(v);
  }
  return MatSubspace::from_flat(rows, cols, gens);
}

BitMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set_row(i, rng() & low_mask(n));
    if (rank(m) == n) return m;
  }
}

namespace {

using Suite = std::function<void(SuiteReport&, const SuiteOptions&)>;

std::string shape_name(const MatSubspace& s) {
  return std::to_string(s.rows()) + "x" + std::to_string(s.cols());
}

std::string histogram(const std::map<std::size_t, std::uint64_t>& h) {
  std::string out;
  for (const auto& [k, v] : h) {
    if (!out.empty()) out += ' ';
    out += std::to_string(k) + ":" + std::to_string(v);
  }
  return out.empty() ? "-" : out;
}

std::size_t samples_or(const SuiteOptions& o, std::size_t fallback) { return o.samples ? o.samples : fallback; }

std::pair<std::uint64_t, std::uint64_t> shard_range(std::uint64_t total, const SuiteOptions& o) {
  if (o.shards == 0 || o.shard >= o.shards) throw ArgumentError("shard index must be below the shard count");
  return {total * o.shard / o.shards, total * (o.shard + 1) / o.shards};
}

/// Checks that a tabulated map is range-compatible, non-local, and congruent to the solver's witness.
void check_witness(SuiteReport& r, const std::string& label, const MatSubspace& s,
                   const std::function<BitVector(const BitMatrix&)>& formula) {
  const std::size_t defect = rc_defect(s);
  r.check(label + ": defect 1", defect == 1, "defect " + std::to_string(defect));
  const MapOnSpace g = MapOnSpace::from_formula(s, formula);
  r.check(label + ": tabulated map is range-compatible", is_range_compatible(s, g));
  r.check(label + ": tabulated map is not local", !is_local(s, g).has_value());
  const auto w = witness_nonlocal(s);
  const bool congruent = w && w->flat_coeffs() == normalize_modulo_local(s, g.flat_coeffs());
  r.check(label + ": solver witness congruent to the tabulated map modulo local maps", congruent);
}

// ---------------------------------------------------------------- suites

void suite_symmetric(SuiteReport& r, const SuiteOptions&) {
  struct Case {
    std::size_t r, n, p;
  };
  for (const Case c : {Case{2, 0, 0}, Case{2, 1, 0}, Case{2, 0, 1}, Case{2, 1, 1}, Case{2, 2, 2}, Case{3, 0, 0},
                       Case{3, 1, 1}, Case{3, 0, 2}, Case{4, 0, 0}, Case{4, 0, 1}}) {
    const MatSubspace s = vee(symmetric(c.r), MatSubspace::full(c.n, c.p));
    const std::size_t rr = c.r;
    const std::string label = "Mats_" + std::to_string(c.r) + " v Mat_{" + std::to_string(c.n) + "," +
                              std::to_string(c.p) + "}";
    check_witness(r, label, s, [rr, rows = s.rows()](const BitMatrix& m) {
      BitVector v(rows);
      for (std::size_t i = 0; i < rr; ++i) v.set(i, m.get(i, i));
      return v;
    });
  }
}

struct TypeCase {
  int type;
  std::size_t n_block, p_block;
};

std::string type_label(const TypeCase& c) {
  return "Type " + std::to_string(c.type) + " (" + std::to_string(c.n_block) + "," + std::to_string(c.p_block) + ")";
}

void suite_special_types(SuiteReport& r, const SuiteOptions&) {
  for (int type = 1; type <= 7; ++type) {
    const bool two_params = type == 1 || type == 3;
    for (const TypeCase c : {TypeCase{type, 0, 0}, TypeCase{type, two_params ? 1u : 0u, 1}}) {
      const MatSubspace s = type_space(c.type, c.n_block, c.p_block);
      const std::string label = type_label(c) + " in Mat_" + shape_name(s);
      r.check(label + ": codimension 2n-3", s.codim() == 2 * s.rows() - 3, "codim " + std::to_string(s.codim()));
      check_witness(r, label, s, type_witness_formula(c.type, s.rows()));
    }
  }
}

/// Type representatives that embed in Mat_3.
std::vector<TypeCase> mat3_types() {
  return {{1, 1, 1}, {2, 0, 0}, {3, 0, 1}, {4, 0, 0}, {5, 0, 0}, {6, 0, 0}};
}

std::vector<TypeCase> mat34_types() {
  return {{1, 1, 2}, {2, 0, 1}, {3, 0, 2}, {4, 0, 1}, {5, 0, 1}, {6, 0, 1}, {7, 0, 0}};
}

void suite_class_3x3(SuiteReport& r, const SuiteOptions& o) {
  std::unordered_map<MatSubspace, int, MatSubspaceHash> owner;
  std::uint64_t orbit_total = 0;
  const std::uint64_t group = gl_order(3) * gl_order(3);
  for (const TypeCase c : mat3_types()) {
    const MatSubspace rep = type_space(c.type, c.n_block, c.p_block);
    const auto members = orbit(rep);
    orbit_total += members.size();
    for (const auto& m : members) owner.emplace(m, c.type);
    r.metric("orbit_size.type" + std::to_string(c.type), members.size());
    const std::uint64_t stab = stabilizer_size(rep);
    r.check(type_label(c) + ": orbit size x stabilizer = |GL_3|^2", members.size() * stab == group,
            std::to_string(members.size()) + " x " + std::to_string(stab));
  }
  r.check("type orbits are pairwise disjoint", owner.size() == orbit_total);

  SubspaceEnumerator it(3, 3, 6);
  const auto [begin, end] = shard_range(it.total(), o);
  it.seek(begin);
  std::uint64_t scanned = 0, defect0 = 0, defect1 = 0, other = 0, mismatched = 0;
  std::map<std::size_t, std::uint64_t> by_type;
  for (std::uint64_t idx = begin; idx < end && it.next(); ++idx) {
    ++scanned;
    const MatSubspace& s = it.current();
    const std::size_t d = rc_defect(s);
    const auto hit = owner.find(s);
    const bool special = hit != owner.end();
    if (d == 0) {
      ++defect0;
    } else if (d == 1) {
      ++defect1;
    } else {
      ++other;
    }
    if (special) ++by_type[static_cast<std::size_t>(hit->second)];
    if ((d == 1) != special) ++mismatched;
  }
  r.metric("subspaces_total", it.total());
  r.metric("scanned", scanned);
  r.metric("defect0", defect0);
  r.metric("defect1", defect1);
  r.metric("special_by_type", histogram(by_type));
  r.check("enumeration count is the Gaussian binomial [9 choose 6]_2 = 788035", it.total() == 788035);
  r.check("every defect lies in {0, 1}", other == 0, std::to_string(other) + " spaces with defect >= 2");
  r.check("defect 1 exactly on the union of the type orbits", mismatched == 0,
          std::to_string(mismatched) + " mismatches");
  if (o.shards == 1) {
    r.check("defect-1 count equals the sum of orbit sizes", defect1 == orbit_total,
            std::to_string(defect1) + " vs " + std::to_string(orbit_total));
  }
}

void suite_n2_hyperplanes(SuiteReport& r, const SuiteOptions&) {
  for (const auto& [p, expected, expected_total] : {std::tuple{2u, 6u, 15u}, std::tuple{3u, 42u, 63u}}) {
    SubspaceEnumerator it(2, p, 2 * p - 1);
    std::uint64_t total = 0, defect1 = 0, rank2 = 0, disagree = 0;
    while (it.next()) {
      const MatSubspace& s = it.current();
      ++total;
      const MatSubspace perp = orthogonal(s);
      const bool is_rank2 = flat_rank(perp.flat_basis()[0], perp.rows(), perp.cols()) == 2;
      const std::size_t d = rc_defect(s);
      defect1 += d == 1;
      rank2 += is_rank2;
      if ((d == 1) != is_rank2 || d > 1) ++disagree;
    }
    const std::string label = "Mat_{2," + std::to_string(p) + "}";
    r.check(label + ": hyperplane count", total == expected_total, std::to_string(total));
    r.check(label + ": defect 1 exactly when the orthogonal is spanned by a rank-2 matrix", disagree == 0,
            std::to_string(disagree) + " disagreements");
    r.check(label + ": defect-1 count", defect1 == expected && rank2 == expected, std::to_string(defect1));
  }
}

void pairwise_inequivalent(SuiteReport& r, const std::vector<TypeCase>& cases, const std::string& where) {
  std::vector<MatSubspace> reps;
  for (const auto& c : cases) reps.push_back(type_space(c.type, c.n_block, c.p_block));
  std::size_t equal_pairs = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto self = are_equivalent(reps[i], reps[i]);
    r.check(where + ": " + type_label(cases[i]) + " equivalent to itself", self && act(*self, reps[i]) == reps[i]);
    for (std::size_t j = i + 1; j < reps.size(); ++j) equal_pairs += are_equivalent(reps[i], reps[j]).has_value();
  }
  r.check(where + ": representatives pairwise inequivalent", equal_pairs == 0,
          std::to_string(equal_pairs) + " equivalent pairs");
}

void suite_inequivalence(SuiteReport& r, const SuiteOptions&) {
  pairwise_inequivalent(r, mat3_types(), "Mat_3");
  pairwise_inequivalent(r, mat34_types(), "Mat_{3,4}");
  for (const TypeCase c : mat34_types()) {
    const MatSubspace rep = type_space(c.type, c.n_block, c.p_block);
    const TypeReport t = classify_type(rep);
    r.check("classify_type recognizes " + type_label(c), t.type_id == c.type && t.certificate &&
                                                            act(*t.certificate, rep) == rep);
  }
  // Not asserted: pairwise equivalence among M1..M4 is recorded only.
  std::string m_pairs;
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      const bool eq = are_equivalent(literal("M" + std::to_string(i)).linear(), literal("M" + std::to_string(j)).linear())
                          .has_value();
      m_pairs += "M" + std::to_string(i) + "~M" + std::to_string(j) + "=" + (eq ? "yes " : "no ");
    }
  }
  r.metric("M_pairs", m_pairs);
}

void suite_mat34(SuiteReport& r, const SuiteOptions& o) {
  for (const TypeCase c : mat34_types()) {
    const MatSubspace rep = type_space(c.type, c.n_block, c.p_block);
    r.check(type_label(c) + " in Mat_{3,4}: defect 1", rc_defect(rep) == 1);
  }
  pairwise_inequivalent(r, mat34_types(), "Mat_{3,4}");
  std::mt19937_64 rng(o.seed);
  const std::size_t samples = samples_or(o, 10000);
  std::uint64_t defect0 = 0, defect1 = 0, bad = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const MatSubspace s = random_subspace(rng, 3, 4, 9);
    const std::size_t d = rc_defect(s);
    if (d == 0) {
      ++defect0;
    } else if (d == 1 && classify_type(s).type_id != 0) {
      ++defect1;
    } else {
      ++bad;
    }
  }
  r.metric("samples", samples);
  r.metric("defect0", defect0);
  r.metric("special", defect1);
  r.check("random codim-3 subspaces of Mat_{3,4}: non-local maps only on special types", bad == 0,
          std::to_string(bad) + " violations");
}

struct DualEntry {
  TypeCase type;
  MatSubspace expected;
};

void suite_dual_table(SuiteReport& r, const SuiteOptions&) {
  const std::vector<DualEntry> table = {
      {{1, 1, 1}, coprod(alternating(2), MatSubspace::full(2, 1))},
      {{1, 2, 0}, coprod(alternating(2), MatSubspace::full(2, 2))},
      {{2, 0, 0}, alternating(3)},
      {{3, 0, 1}, literal("T3perp").linear()},
      {{3, 1, 0}, coprod(literal("T3perp").linear(), MatSubspace::full(2, 1))},
      {{4, 0, 0}, literal("G3perp").linear()},
      {{5, 0, 0}, literal("H3perp").linear()},
      {{6, 0, 0}, literal("I3perp").linear()},
      {{7, 0, 0}, literal("H4perp").linear()},
      {{4, 0, 1}, literal("G3perp").linear()},
  };
  for (const auto& e : table) {
    const MatSubspace rep = type_space(e.type.type, e.type.n_block, e.type.p_block);
    const MatSubspace red = reduce(orthogonal(rep)).reduced;
    const bool same_shape = red.rows() == e.expected.rows() && red.cols() == e.expected.cols();
    const bool eq = same_shape && are_equivalent(red, e.expected).has_value();
    r.check(type_label(e.type) + ": reduced orthogonal matches the table", eq,
            "reduced shape " + shape_name(red) + ", table shape " + shape_name(e.expected));
  }
  for (const char* name : {"G3", "H3", "I3", "H4"}) {
    const MatSubspace perp = orthogonal(literal(name).linear());
    const MatSubspace listed = literal(std::string(name) + "perp").linear();
    r.check(std::string(name) + ": orthogonal is reduced and equivalent to the listed space",
            is_reduced(perp) && are_equivalent(perp, listed).has_value());
    r.metric(std::string(name) + ".literal_match", perp == listed ? "yes" : "no");
  }
  r.check("H3perp equivalent to U3", are_equivalent(literal("H3perp").linear(), literal("U3").linear()).has_value());
}

void suite_special_type_lemma(SuiteReport& r, const SuiteOptions&) {
  const std::vector<std::pair<std::string, MatSubspace>> spaces = {
      {"Mata_3", alternating(3)},
      {"G3perp", literal("G3perp").linear()},
      {"H3perp", literal("H3perp").linear()},
      {"I3perp", literal("I3perp").linear()},
      {"H4perp", literal("H4perp").linear()}};
  for (const auto& [name, s] : spaces) {
    std::size_t small = 0;
    for (Word x = 1; x < (Word{1} << s.cols()); ++x) small += apply(s, BitVector(s.cols(), x)).dim() <= 1;
    const std::size_t expected = name == "G3perp" ? 1 : 0;
    r.check(name + ": vectors x != 0 with dim Sx <= 1", small == expected, std::to_string(small));
    r.check(name + ": span of all Ny has dimension >= 3", total_image(s).dim() >= 3);
  }
  const MatSubspace g3p = literal("G3perp").linear();
  r.check("G3perp: the exceptional vector is the third basis vector", apply(g3p, BitVector::unit(3, 2)).dim() <= 1);
}

void suite_self_duality(SuiteReport& r, const SuiteOptions&) {
  for (const auto& [name, s] : std::vector<std::pair<std::string, MatSubspace>>{
           {"Mata_3", alternating(3)},
           {"G3perp", literal("G3perp").linear()},
           {"H3perp", literal("H3perp").linear()},
           {"H4perp", literal("H4perp").linear()}}) {
    const MatSubspace h = hat(s);
    r.check(name + ": hat space equivalent to the space", h.rows() == s.rows() && h.cols() == s.cols() &&
                                                            are_equivalent(h, s).has_value());
  }
  const MatSubspace i3p = literal("I3perp").linear();
  std::vector<BitMatrix> i3p_gens;
  for (Word g : literal("I3perp").generators) i3p_gens.push_back(BitMatrix::unflatten(3, 3, g));
  const MatSubspace displayed = literal("I3perp-hat").linear();
  r.check("I3perp: hat space on the listed generators equals the displayed space",
          hat_of(i3p_gens, 3, 3) == displayed);
  r.check("I3perp: hat space on the canonical basis equivalent to the displayed space",
          are_equivalent(hat(i3p), displayed).has_value());
  const MatSubspace u3 = literal("U3").linear();
  for (const auto& [name, s] : std::vector<std::pair<std::string, MatSubspace>>{{"Mata_3", alternating(3)},
                                                                              {"U3", u3}}) {
    const InvariantProfile prof = profile(s);
    r.check(name + ": 3-dimensional, every non-zero element of rank 2",
            s.dim() == 3 && prof.rank_counts.size() > 2 && prof.rank_counts[0] == 1 && prof.rank_counts[2] == 7);
  }
  r.check("I3perp contains the rank-3 matrix [[1,0,0],[0,1,0],[1,1,1]]",
          i3p.contains(BitMatrix::from_strings({"100", "010", "111"})) && upper_rank(i3p) == 3);
  for (const char* name : {"G3perp", "H3perp"}) {
    r.check(std::string(name) + ": upper-rank 2", upper_rank(literal(name).linear()) == 2);
  }
}

void suite_primitive(SuiteReport& r, const SuiteOptions&) {
  const MatSubspace mata3 = alternating(3), u3 = literal("U3").linear();
  r.check("Mata_3 primitive", is_primitive(mata3));
  r.check("U3 primitive", is_primitive(u3));
  r.check("V2 not primitive", !is_primitive(literal("V2").linear()));
  r.check("Mata_3 and U3 inequivalent", !are_equivalent(mata3, u3));
  for (int i = 1; i <= 4; ++i) {
    const MatSubspace m = literal("M" + std::to_string(i)).linear();
    std::size_t dim1 = 0;
    for (Word x = 1; x < 8; ++x) dim1 += apply(m, BitVector(3, x)).dim() == 1;
    r.check("M" + std::to_string(i) + ": 3-dimensional primitive, upper-rank 2, some dim Vx = 1",
            m.dim() == 3 && is_primitive(m) && upper_rank(m) == 2 && dim1 > 0);
  }
  // G3perp is equivalent to a subspace of J3.
  const MatSubspace g3p = literal("G3perp").linear(), j3 = literal("J3").linear();
  bool inside = false;
  for (const BitMatrix& p : gl_group(3)) {
    for (const BitMatrix& q : gl_group(3)) {
      if (multiply(p, g3p, q).is_subspace_of(j3)) {
        inside = true;
        break;
      }
    }
    if (inside) break;
  }
  r.check("G3perp equivalent to a subspace of J3", inside);
  r.check("Mata_3 equivalent to no subspace of J3", [&] {
    for (const BitMatrix& p : gl_group(3)) {
      for (const BitMatrix& q : gl_group(3)) {
        if (multiply(p, mata3, q).is_subspace_of(j3)) return false;
      }
    }
    return true;
  }());
  // Non-primitive reduced spaces of upper-rank <= 2 in Mat_3 admit a corner compression.
  std::uint64_t nonprimitive = 0, failures = 0;
  for (std::size_t k = 2; k <= 3; ++k) {
    SubspaceEnumerator it(3, 3, k);
    while (it.next()) {
      const MatSubspace& s = it.current();
      if (upper_rank(s) > 2 || !is_reduced(s) || is_primitive(s)) continue;
      ++nonprimitive;
      failures += !has_corner_compression(s);
    }
  }
  r.metric("nonprimitive_reduced_urk2_dim2_3", nonprimitive);
  r.check("non-primitive reduced upper-rank-2 subspaces of Mat_3 (dim 2, 3) have a corner compression",
          failures == 0, std::to_string(failures) + " failures");
}

void suite_reflexivity_2dim(SuiteReport& r, const SuiteOptions&) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t p = 1; p <= 3; ++p) {
      const TwoDimReport rep = check_2dim_theorem(n, p);
      const std::string label = "Mat_{" + std::to_string(n) + "," + std::to_string(p) + "}";
      std::string cases;
      for (const auto& [c, count] : rep.case_counts) cases += std::string(to_string(c)) + ":" + std::to_string(count) + " ";
      r.metric(label + ".reduced", rep.reduced_spaces);
      r.metric(label + ".cases", cases.empty() ? "-" : cases);
      if (!rep.square_case_defects.empty()) {
        r.metric(label + ".square_case_defects", histogram(rep.square_case_defects));
      }
      r.check(label + ": non-reflexive exactly in the exceptional cases", rep.ok(),
              std::to_string(rep.violations.size()) + " violations");
    }
  }
  const MatSubspace e2 = literal("E2").linear();
  r.check("E2 defect 1", reflexivity_defect(e2) == 1);
  r.check("E3 defect 1", reflexivity_defect(literal("E3").linear()) == 1);
  r.check("E2^T defect 1", reflexivity_defect(transpose_space(e2)) == 1);
}

MatSubspace random_small(std::mt19937_64& rng, std::size_t max_side) {
  const std::size_t n = uniform_index(rng, 1, max_side), p = uniform_index(rng, 1, max_side);
  return random_subspace(rng, n, p, uniform_index(rng, 0, n * p));
}

void suite_duality_identity(SuiteReport& r, const SuiteOptions& o) {
  std::mt19937_64 rng(o.seed);
  const std::size_t samples = samples_or(o, 1000);
  std::uint64_t bad = 0;
  std::map<std::size_t, std::uint64_t> defects;
  for (std::size_t k = 0; k < samples; ++k) {
    const MatSubspace s = random_small(rng, 4);
    const std::size_t d = reflexivity_defect(s);
    ++defects[d];
    bad += d != rc_defect(hat(s));
  }
  r.metric("samples", samples);
  r.metric("defects", histogram(defects));
  r.check("reflexivity defect of S equals rc defect of its hat space", bad == 0, std::to_string(bad) + " mismatches");
}

void suite_transpose_invariance(SuiteReport& r, const SuiteOptions& o) {
  std::mt19937_64 rng(o.seed);
  const std::size_t samples = samples_or(o, 1000);
  std::uint64_t bad = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const MatSubspace s = random_small(rng, 4);
    bad += reflexivity_defect(s) != reflexivity_defect(transpose_space(s));
  }
  r.metric("samples", samples);
  r.check("reflexivity defect invariant under transposition", bad == 0, std::to_string(bad) + " mismatches");
}

void suite_azoff(SuiteReport& r, const SuiteOptions& o) {
  std::mt19937_64 rng(o.seed);
  const std::size_t samples = samples_or(o, 500);
  std::uint64_t bad = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const MatSubspace v = random_small(rng, 4);
    bad += reflexivity_defect(orthogonal(v)) != v.dim() - rank_one_span(v).dim();
  }
  r.metric("samples", samples);
  r.check("defect of the orthogonal equals dim V - dim of the rank-1 span", bad == 0,
          std::to_string(bad) + " mismatches");
}

void suite_affine_lrk2(SuiteReport& r, const SuiteOptions& o) {
  const std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> shapes = {
      {2, 2, 2}, {2, 3, 3}, {3, 2, 3}, {3, 3, 5}};
  for (const auto& [n, p, expected] : shapes) {
    const bool sharded = n == 3 && p == 3;
    const AffineCensus c = sharded ? classify_affine_lrk2(n, p, o.shard, o.shards) : classify_affine_lrk2(n, p);
    const std::string label = "Mat_{" + std::to_string(n) + "," + std::to_string(p) + "}";
    std::string sizes;
    for (const auto& cls : c.classes) {
      sizes += cls.name + ":" + std::to_string(cls.orbit_size) + " ";
      r.check(label + ": " + cls.name + " has codimension 3 and lower-rank 2",
              cls.representative.codim() == 3 && lower_rank(cls.representative) == 2);
    }
    r.metric(label + ".orbit_sizes", sizes);
    r.metric(label + ".survivors", c.survivors);
    r.check(label + ": representative count", c.classes.size() == expected, std::to_string(c.classes.size()));
    r.check(label + ": survivors are the disjoint union of the representative orbits", c.ok(),
            std::to_string(c.unmatched) + " unmatched, " + std::to_string(c.survivors) + " survivors");
  }
}

void suite_uniqueness(SuiteReport& r, const SuiteOptions&) {
  for (const auto& [n, p] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    r.check("Mat_{" + std::to_string(n) + "," + std::to_string(p) + "}: i(I+F2C) and i(I+F2J) inequivalent",
            check_uniqueness_prop(n, p));
  }
  const AffineMatSpace ic = literal("IC").affine();
  const AffineMatSpace id = multiply(BitMatrix::identity(2), ic, BitMatrix::identity(2));
  r.check("identity action fixes I+F2C", id == ic);
}

void suite_maintheolin(SuiteReport& r, const SuiteOptions& o) {
  std::mt19937_64 rng(o.seed);
  const std::size_t samples = samples_or(o, 1000);
  std::uint64_t bad = 0;
  std::map<std::size_t, std::uint64_t> by_codim;
  for (std::size_t k = 0; k < samples; ++k) {
    const std::size_t n = uniform_index(rng, 3, 4);
    const std::size_t p = uniform_index(rng, 2, 4);
    const std::size_t ambient = n * p;
    const std::size_t min_codim = ambient > 14 ? ambient - 14 : 0;
    const std::size_t codim = uniform_index(rng, min_codim, 2 * n - 4);
    const MatSubspace s = random_subspace(rng, n, p, ambient - codim);
    ++by_codim[codim];
    bad += rc_defect(s) != 0;
  }
  r.metric("samples", samples);
  r.metric("codims", histogram(by_codim));
  r.check("codim <= 2n-4 implies every range-compatible map is local", bad == 0,
          std::to_string(bad) + " counterexamples");
}

void suite_properties(SuiteReport& r, const SuiteOptions& o) {
  std::mt19937_64 rng(o.seed);

  // gf2core
  {
    std::uint64_t bad = 0;
    for (Word m = 0; m < 512; ++m) {
      const BitMatrix a = BitMatrix::unflatten(3, 3, m);
      bad += flat_rank(m, 3, 3) != rank(a) || rank(a) != rank(a.transpose());
      const RrefResult rr = rref(a);
      bad += !(rref(rr.reduced).reduced == rr.reduced) || !(rr.row_transform * a == rr.reduced) ||
             rr.pivot_cols.size() != rank(a);
      const auto ns = nullspace(a);
      bad += ns.size() + rank(a) != 3;
      for (const auto& v : ns) bad += !(a * v).is_zero();
    }
    r.check("rank table, transpose rank, rref and nullspace agree on all of Mat_3", bad == 0);
    bool gl_ok = true;
    for (std::size_t n = 1; n <= 4; ++n) {
      std::unordered_set<Word> seen;
      GlEnumerator g(n);
      while (g.next()) gl_ok = gl_ok && rank(g.current()) == n && seen.insert(g.current().flatten()).second;
      gl_ok = gl_ok && seen.size() == gl_order(n);
    }
    r.check("GL_n enumeration: distinct invertible matrices, order formula, n <= 4", gl_ok);
  }

  // subspace enumeration counts
  {
    bool ok = true;
    for (std::size_t len = 1; len <= 9; ++len) {
      const std::size_t n = len == 9 ? 3 : len % 2 == 0 ? 2 : 1;
      const std::size_t p = len / n;
      for (std::size_t k = 0; k <= len; ++k) {
        SubspaceEnumerator it(n, p, k);
        std::uint64_t count = 0;
        std::unordered_set<MatSubspace, MatSubspaceHash> seen;
        while (it.next()) {
          ++count;
          if (len <= 6) ok = ok && seen.insert(it.current()).second && it.current().dim() == k;
        }
        ok = ok && count == gaussian_binomial(len, k);
      }
    }
    r.check("subspace enumeration matches Gaussian binomials for np <= 9", ok);
  }

  // double orthogonality
  {
    std::uint64_t bad = 0;
    for (std::size_t k = 0; k <= 4; ++k) {
      SubspaceEnumerator it(2, 2, k);
      while (it.next()) bad += !(orthogonal(orthogonal(it.current())) == it.current());
    }
    for (int k = 0; k < 1000; ++k) {
      const MatSubspace s = random_small(rng, 6);
      const MatSubspace perp = orthogonal(s);
      bad += perp.dim() + s.dim() != s.ambient_dim() || !(orthogonal(perp) == s);
    }
    r.check("double orthogonality (exhaustive Mat_2, 1000 random)", bad == 0);
  }

  // quotient codimension identity and projection compatibility
  {
    std::uint64_t bad = 0, bad_proj = 0;
    for (int k = 0; k < 100; ++k) {
      const std::size_t n = uniform_index(rng, 2, 4), p = uniform_index(rng, 1, 4);
      const MatSubspace s = random_subspace(rng, n, p, uniform_index(rng, 0, std::min<std::size_t>(n * p, 10)));
      const MatSubspace perp = orthogonal(s);
      const MatSubspace rc = rc_space(s);
      for (Word y = 1; y < (Word{1} << n); ++y) {
        const BitVector yy(n, y);
        const MatSubspace q = quotient_mod(s, yy);
        bad += q.codim() + apply(perp, yy).dim() != s.codim();
        const MatSubspace q_rc = rc_space(q);
        for (Word f : rc.flat_basis()) {
          const auto projected = project_map(s, MapOnSpace::from_flat(s, f), yy);
          bad_proj += !projected || !q_rc.contains_flat(projected->flat_coeffs());
        }
      }
    }
    r.check("codim(S mod y) = codim S - dim S-perp y (100 random S, all y)", bad == 0);
    r.check("range-compatible maps descend to S mod y", bad_proj == 0);
  }

  // splitting additivity
  {
    std::uint64_t bad = 0;
    for (int k = 0; k < 200; ++k) {
      const std::size_t n = uniform_index(rng, 1, 3);
      const std::size_t p1 = uniform_index(rng, 1, 3), p2 = uniform_index(rng, 1, 3);
      const MatSubspace a = random_subspace(rng, n, p1, uniform_index(rng, 0, std::min<std::size_t>(n * p1, 7)));
      const MatSubspace b = random_subspace(rng, n, p2, uniform_index(rng, 0, std::min<std::size_t>(n * p2, 7)));
      bad += rc_defect(coprod(a, b)) != rc_defect(a) + rc_defect(b);
    }
    for (int k = 0; k < 50; ++k) {
      const MatSubspace a = random_small(rng, 3), b = random_small(rng, 3);
      const MatSubspace v = vee(a, b);
      const MatSubspace c = a.rows() == b.rows() ? coprod(a, b) : MatSubspace();
      bad += v.dim() != a.dim() + b.dim() + a.rows() * b.cols();
      if (a.rows() == b.rows()) bad += c.dim() != a.dim() + b.dim();
    }
    r.check("rc defect additive over juxtaposition (200 pairs); vee and coprod dimensions", bad == 0);
  }

  // embedding, row-wise structure, dim U = 1
  {
    std::uint64_t bad_embed = 0, bad_rows = 0;
    for (int k = 0; k < 200; ++k) {
      const std::size_t n = uniform_index(rng, 1, 3), p = uniform_index(rng, 1, 4);
      const MatSubspace s = random_subspace(rng, n, p, uniform_index(rng, 0, std::min<std::size_t>(n * p, 9)));
      const MatSubspace padded = tilde(s, n + 1, p);
      const MatSubspace padded_rc = rc_space(padded);
      bad_embed += rc_defect(padded) != rc_defect(s);
      for (Word g : padded_rc.flat_basis()) bad_embed += (g >> (n * padded.dim())) != 0;
      const MatSubspace rc = rc_space(s);
      for (Word g : rc.flat_basis()) {
        const MapOnSpace f = MapOnSpace::from_flat(s, g);
        for (std::size_t i = 0; i < n; ++i) {
          const Word row_mask = low_mask(p) << (i * p);
          for_each_element(s, [&](Word e, Word coords) {
            if (!(e & row_mask) && f.at_coords(coords).get(i)) ++bad_rows;
          });
        }
      }
    }
    r.check("padding with a zero row keeps the defect and forces zero padded coordinates", bad_embed == 0);
    r.check("range-compatible maps act row by row", bad_rows == 0);
    std::uint64_t bad_u1 = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        SubspaceEnumerator it(n, 1, k);
        while (it.next()) bad_u1 += rc_defect(it.current()) != 0;
      }
    }
    r.check("one-column spaces have no non-local maps (exhaustive, n <= 4)", bad_u1 == 0);
  }

  // group action invariants
  {
    std::uint64_t bad_profile = 0, bad_cert = 0, bad_lrk = 0, bad_reduce = 0;
    for (int k = 0; k < 200; ++k) {
      const std::size_t n = uniform_index(rng, 1, 4), p = uniform_index(rng, 1, 4);
      const MatSubspace s = random_subspace(rng, n, p, uniform_index(rng, 0, std::min<std::size_t>(n * p, 8)));
      const Certificate c{random_invertible(rng, n), random_invertible(rng, p)};
      const MatSubspace t = act(c, s);
      bad_profile += !(profile(s) == profile(t));
      if (k < 60 && n <= 3 && p <= 3) {
        const auto found = are_equivalent(s, t);
        const auto back = are_equivalent(t, s);
        bad_cert += !found || !(act(*found, s) == t) || !back || !(act(*back, t) == s);
      }
      const Reduction red = reduce(s);
      bad_reduce += !(reduce(red.reduced).reduced == red.reduced) || !is_reduced(red.reduced);
      const Word off = rng() & low_mask(n * p);
      const AffineMatSpace a = AffineMatSpace::from_flat(off, s);
      bad_lrk += lower_rank(a) != lower_rank(act(c, a));
    }
    r.check("invariant profile preserved by the action (200 random)", bad_profile == 0);
    r.check("equivalence certificates verify in both directions", bad_cert == 0);
    r.check("lower-rank preserved by the action (200 random)", bad_lrk == 0);
    r.check("reduction is idempotent and yields reduced spaces", bad_reduce == 0);
    std::uint64_t bad_inp = 0;
    for (int k = 0; k < 100; ++k) {
      const MatSubspace dir = random_subspace(rng, 2, 2, uniform_index(rng, 0, 3));
      const AffineMatSpace w = AffineMatSpace::from_flat(rng() & 0xF, dir);
      const std::size_t n = uniform_index(rng, 2, 4), p = uniform_index(rng, 2, 4);
      const AffineMatSpace big = i_np(w, n, p);
      bad_inp += lower_rank(big) != lower_rank(w) || big.codim() != w.codim();
    }
    r.check("i_np preserves lower-rank and codimension (100 random)", bad_inp == 0);
  }

  // text round trip
  {
    std::uint64_t bad = 0;
    for (const auto& name : literal_names()) {
      const ParametricSpace& ps = literal(name);
      if (ps.offset) {
        bad += !(parse_affine(emit(ps.affine())) == ps.affine());
      } else {
        bad += !(parse_matspace(emit(ps.linear())) == ps.linear());
      }
    }
    for (int k = 0; k < 200; ++k) {
      const MatSubspace s = random_small(rng, 5);
      bad += !(parse_matspace(emit(s)) == s);
    }
    r.check("text format round trip (catalog and 200 random)", bad == 0);
  }
}

const std::vector<std::pair<std::string, Suite>>& registry() {
  static const std::vector<std::pair<std::string, Suite>> suites = {
      {"symmetric-f2", suite_symmetric},
      {"special-types", suite_special_types},
      {"class-3x3", suite_class_3x3},
      {"n2-hyperplanes", suite_n2_hyperplanes},
      {"inequivalence", suite_inequivalence},
      {"mat34", suite_mat34},
      {"dual-table", suite_dual_table},
      {"special-type-lemma", suite_special_type_lemma},
      {"self-duality", suite_self_duality},
      {"primitive", suite_primitive},
      {"reflexivity-2dim", suite_reflexivity_2dim},
      {"duality-identity", suite_duality_identity},
      {"transpose-invariance", suite_transpose_invariance},
      {"azoff", suite_azoff},
      {"affine-lrk2", suite_affine_lrk2},
      {"uniqueness", suite_uniqueness},
      {"maintheolin-f2", suite_maintheolin},
      {"properties", suite_properties},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteReport verify(std::string_view suite, const SuiteOptions& options) {
  for (const auto& [name, fn] : registry()) {
    if (name != suite) continue;
    SuiteReport report;
    report.suite = name;
    const auto start = std::chrono::steady_clock::now();
    fn(report, options);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }
  throw ArgumentError("unknown suite '" + std::string(suite) + "'");
}

std::string format_report(const SuiteReport& report) {
  std::ostringstream out;
  out << "suite " << report.suite << ": " << (report.pass() ? "PASS" : "FAIL") << " (" << report.checks.size()
      << " checks, " << report.seconds << " s)\n";
  for (const auto& c : report.checks) {
    out << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) out << " -- " << c.detail;
    out << '\n';
  }
  for (const auto& [k, v] : report.metrics) out << "  " << k << " = " << v << '\n';
  return out.str();
}

}  // namespace rcf2
