#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rcf2/catalog.hpp"
#include "rcf2/equivalence.hpp"
#include "rcf2/error.hpp"
#include "rcf2/harness.hpp"
#include "rcf2/range_compat.hpp"
#include "rcf2/rank_geom.hpp"
#include "rcf2/reflexivity.hpp"
#include "rcf2/text_format.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace rcf2;

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct Output {
  bool structured = false;
  json doc = json::object();
  std::ostringstream text;

  template <class T>
  void field(const std::string& key, const T& value) {
    doc[key] = value;
    text << key << ": " << value << '\n';
  }
  void block(const std::string& key, const std::string& value) {
    doc[key] = value;
    text << key << ":\n" << value;
    if (!value.empty() && value.back() != '\n') text << '\n';
  }
  void flush() const {
    if (structured) {
      std::cout << doc.dump(2) << '\n';
    } else {
      std::cout << text.str();
    }
  }
};

std::string counts_text(const std::vector<std::uint64_t>& counts) {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (!counts[i]) continue;
    if (!out.empty()) out += ' ';
    out += std::to_string(i) + ":" + std::to_string(counts[i]);
  }
  return out.empty() ? "-" : out;
}

json counts_json(const std::vector<std::uint64_t>& counts) {
  json out = json::object();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i]) out[std::to_string(i)] = counts[i];
  }
  return out;
}

AnySpace load(const std::string& path) {
  try {
    return read_space_file(path);
  } catch (const ParseError& e) {
    throw ArgumentError(path + ": " + e.what());
  }
}

MatSubspace read_linear(const std::string& path) {
  const AnySpace s = load(path);
  if (const auto* m = std::get_if<MatSubspace>(&s)) return *m;
  throw ArgumentError(path + ": expected a linear space ('matspace'), got an affine space");
}

void print_certificate(Output& out, const Certificate& c) {
  out.block("P", emit_matrix(c.p));
  out.block("Q", emit_matrix(c.q));
}

int run_analyze(const std::string& path, Output& out) {
  const MatSubspace s = read_linear(path);
  out.field("rows", s.rows());
  out.field("cols", s.cols());
  out.field("dim", s.dim());
  out.field("codim", s.codim());
  const InvariantProfile prof = profile(s);
  out.text << "rank_counts: " << counts_text(prof.rank_counts) << '\n'
           << "col_profile: " << counts_text(prof.col_profile) << '\n'
           << "row_profile: " << counts_text(prof.row_profile) << '\n';
  out.doc["rank_counts"] = counts_json(prof.rank_counts);
  out.doc["col_profile"] = counts_json(prof.col_profile);
  out.doc["row_profile"] = counts_json(prof.row_profile);
  out.field("common_kernel_dim", prof.u0_dim);
  out.field("total_image_dim", prof.v0_dim);
  const RcAnalysis rc = analyze_rc(s);
  out.field("rc_dim", rc.rc.dim());
  out.field("loc_dim", rc.loc.dim());
  out.field("rc_defect", rc.defect);
  if (const auto w = witness_nonlocal(s)) {
    out.block("witness", emit_map(*w));
  } else {
    out.field("witness", "none");
  }
  const TypeReport t = classify_type(s);
  if (t.type_id) {
    out.field("type", t.type_id);
    out.field("type_n_block", t.n_block);
    out.field("type_p_block", t.p_block);
  } else {
    out.field("type", "none");
    if (!t.reason.empty()) out.field("type_reason", t.reason);
  }
  out.field("reflexivity_defect", reflexivity_defect(s));
  return 0;
}

int run_classify(const std::string& path, Output& out) {
  const MatSubspace s = read_linear(path);
  const TypeReport t = classify_type(s);
  if (!t.type_id) {
    out.field("type", "none");
    if (!t.reason.empty()) out.field("reason", t.reason);
    return 0;
  }
  out.field("type", t.type_id);
  out.field("n_block", t.n_block);
  out.field("p_block", t.p_block);
  if (t.certificate) print_certificate(out, *t.certificate);
  return 0;
}

int run_equiv(const std::string& a, const std::string& b, Output& out) {
  const AnySpace s = load(a), t = load(b);
  if (s.index() != t.index()) throw ArgumentError("cannot compare a linear space with an affine space");
  std::optional<Certificate> c;
  if (const auto* m = std::get_if<MatSubspace>(&s)) {
    c = are_equivalent(*m, std::get<MatSubspace>(t));
  } else {
    c = are_equivalent(std::get<AffineMatSpace>(s), std::get<AffineMatSpace>(t));
  }
  out.field("result", c ? "equivalent" : "inequivalent");
  if (c) print_certificate(out, *c);
  return 0;
}

int run_reflexivity(const std::string& path, Output& out) {
  const MatSubspace s = read_linear(path);
  const MatSubspace closure = reflexive_closure(s);
  out.field("dim", s.dim());
  out.field("closure_dim", closure.dim());
  out.field("reflexivity_defect", closure.dim() - s.dim());
  if (s.dim() == 2 && is_reduced(s) && s.rows() <= 3 && s.cols() <= 3) {
    out.field("two_dim_case", to_string(predicted_2dim_case(s)));
  }
  return 0;
}

int run_affine_lrk(const std::string& path, Output& out) {
  const AnySpace s = load(path);
  const AffineMatSpace a = std::holds_alternative<AffineMatSpace>(s)
                               ? std::get<AffineMatSpace>(s)
                               : AffineMatSpace::from_flat(0, std::get<MatSubspace>(s));
  out.field("lower_rank", lower_rank(a));
  return 0;
}

int run_catalog(const std::string& name, const std::vector<std::size_t>& params, Output& out) {
  if (name.empty()) {
    json names = json::array();
    for (const auto& n : catalog_names()) {
      names.push_back(n);
      out.text << n << '\n';
    }
    out.doc["names"] = names;
    return 0;
  }
  const AnySpace s = named(name, params);
  const std::string body = std::visit([](const auto& v) { return emit(v); }, s);
  out.doc["name"] = name;
  out.doc["space"] = body;
  out.text << body;
  return 0;
}

int run_verify(const std::vector<std::string>& suites, const SuiteOptions& opts, const std::string& report_path,
               Output& out) {
  std::vector<std::string> selected = suites;
  if (selected.size() == 1 && selected[0] == "all") selected = suite_names();
  bool pass = true;
  json reports = json::array();
  for (const auto& name : selected) {
    const SuiteReport r = verify(name, opts);
    pass = pass && r.pass();
    out.text << format_report(r);
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    json metrics = json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = v;
    reports.push_back({{"suite", r.suite}, {"pass", r.pass()}, {"seconds", r.seconds}, {"checks", checks},
                       {"metrics", metrics}});
  }
  out.doc["seed"] = opts.seed;
  out.doc["shard"] = opts.shard;
  out.doc["shards"] = opts.shards;
  out.doc["pass"] = pass;
  out.doc["suites"] = reports;
  if (!report_path.empty()) {
    std::ofstream file(report_path);
    if (!file) throw ArgumentError("cannot write report file '" + report_path + "'");
    file << out.doc.dump(2) << '\n';
  }
  return pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range-compatible maps and operator spaces over GF(2)"};
  app.require_subcommand(1);
  std::string format = "human";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "structured"}));

  std::string file_a, file_b;
  auto* analyze = app.add_subcommand("analyze", "Dimensions, invariants, rc defect, witness, type, reflexivity");
  analyze->add_option("file", file_a, "Space file")->required();
  auto* classify = app.add_subcommand("classify-type", "Recognize Types 1-7 with a certificate");
  classify->add_option("file", file_a, "Space file")->required();
  auto* equiv = app.add_subcommand("equiv", "Decide equivalence and print a certificate");
  equiv->add_option("first", file_a, "Space file")->required();
  equiv->add_option("second", file_b, "Space file")->required();
  auto* reflex = app.add_subcommand("reflexivity", "Reflexive closure and defect");
  reflex->add_option("file", file_a, "Space file")->required();
  auto* lrk = app.add_subcommand("affine-lrk", "Lower rank of an affine (or linear) space");
  lrk->add_option("file", file_a, "Space file")->required();

  std::string cat_name;
  std::vector<std::size_t> cat_params;
  auto* catalog = app.add_subcommand("catalog", "List catalog names or print a named space");
  catalog->add_option("name", cat_name, "Catalog name (omit to list)");
  catalog->add_option("params", cat_params, "Numeric parameters, e.g. 'type 3 1 0'");

  std::vector<std::string> suites;
  SuiteOptions opts;
  std::string report_path;
  auto* ver = app.add_subcommand("verify", "Run verification suites ('all' for every suite)");
  ver->add_option("suites", suites, "Suite names")->required();
  ver->add_option("--seed", opts.seed, "Random seed");
  ver->add_option("--samples", opts.samples, "Sample count (0 = suite default)");
  ver->add_option("--shards", opts.shards, "Shard count")->check(CLI::PositiveNumber);
  ver->add_option("--shard", opts.shard, "Shard index");
  ver->add_option("--report", report_path, "Also write the structured report to this file");
  auto* list = app.add_subcommand("suites", "List verification suites");

  for (auto* sub : {analyze, classify, equiv, reflex, lrk, catalog, ver, list}) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "structured"}));
  }

  CLI11_PARSE(app, argc, argv);

  Output out;
  out.structured = format == "structured";
  try {
    int status = 0;
    if (*analyze) {
      status = run_analyze(file_a, out);
    } else if (*classify) {
      status = run_classify(file_a, out);
    } else if (*equiv) {
      status = run_equiv(file_a, file_b, out);
    } else if (*reflex) {
      status = run_reflexivity(file_a, out);
    } else if (*lrk) {
      status = run_affine_lrk(file_a, out);
    } else if (*catalog) {
      status = run_catalog(cat_name, cat_params, out);
    } else if (*ver) {
      status = run_verify(suites, opts, report_path, out);
    } else if (*list) {
      json names = json::array();
      for (const auto& n : suite_names()) {
        names.push_back(n);
        out.text << n << '\n';
      }
      out.doc["suites"] = names;
    }
    out.flush();
    return status;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
