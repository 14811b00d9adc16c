#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "rcf2/harness.hpp"

namespace {

struct Criterion {
  int id;
  const char* title;
  std::vector<const char*> suites;
  double limit_seconds;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "special types: defect 1 and tabulated witness, minimal and enlarged shapes", {"special-types"}, 5},
      {2, "exhaustive 3x3 classification against type orbits", {"class-3x3"}, 900},
      {3, "n = 2 hyperplanes of Mat_{2,2} and Mat_{2,3}", {"n2-hyperplanes"}, 1},
      {4, "type representatives pairwise inequivalent in Mat_3 and Mat_{3,4}", {"inequivalence", "mat34"}, 120},
      {5, "dual table, special-type lemma, self-duality", {"dual-table", "special-type-lemma", "self-duality"}, 10},
      {6, "two-dimensional non-reflexive spaces, n, p <= 3", {"reflexivity-2dim"}, 60},
      {7, "duality, transpose and orthogonal defect identities", {"duality-identity", "transpose-invariance", "azoff"}, 60},
      {8, "affine lower-rank-2 classes 2/3/3/5", {"affine-lrk2"}, 600},
      {9, "codim <= 2n-4 forces local maps (sampled)", {"maintheolin-f2"}, 60},
      {10, "property suites", {"properties"}, 120},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool all_pass = true;
  for (const Criterion& c : criteria()) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string failed;
    for (const char* suite : c.suites) {
      const rcf2::SuiteReport r = rcf2::verify(suite);
      if (!r.pass()) {
        pass = false;
        for (const auto& chk : r.checks) {
          if (!chk.pass) failed += "\n    " + std::string(suite) + ": " + chk.name + (chk.detail.empty() ? "" : " -- " + chk.detail);
        }
      }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit_seconds;
    const bool ok = pass && in_time;
    all_pass = all_pass && ok;
    std::printf("%s criterion %d: %s (%.2f s, limit %.0f s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title, seconds,
                c.limit_seconds, in_time ? "" : " -- over time limit", failed.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
