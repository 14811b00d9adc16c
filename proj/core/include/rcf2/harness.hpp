#pragma once

// Named verification suites. Each suite runs a set of exact checks and
// returns a report; random suites are driven by an explicit seed.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rcf2/bit_matrix.hpp"
#include "rcf2/mat_space.hpp"

namespace rcf2 {

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 0;  // 0 = suite default
  std::size_t shard = 0;
  std::size_t shards = 1;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, std::string>> metrics;
  double seconds = 0.0;

  bool pass() const noexcept;
  void check(std::string name, bool ok, std::string detail = {});
  void metric(std::string key, std::string value);
  void metric(std::string key, std::uint64_t value);
};

const std::vector<std::string>& suite_names();

/// Throws ArgumentError for an unknown suite name.
SuiteReport verify(std::string_view suite, const SuiteOptions& options = {});

/// Human-readable rendering: one line per check, then metrics.
std::string format_report(const SuiteReport& report);

// ---------------------------------------------------------------- sampling helpers

/// Uniform integer in [lo, hi] from the raw engine output (platform independent).
std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi);

/// Span of random matrices, drawn until the dimension reaches `dim`.
MatSubspace random_subspace(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t dim);

BitMatrix random_invertible(std::mt19937_64& rng, std::size_t n);

}  // namespace rcf2
