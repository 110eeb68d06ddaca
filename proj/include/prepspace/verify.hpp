#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace prepspace {

/// One invariant checked at one dimension.
struct CheckResult {
  std::string check;
  int n = 0;
  std::size_t cases = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  /// Replaces every per-check tolerance when set.
  std::optional<double> tolerance;
  /// Largest dimension exercised by the n-generic checks.
  int max_dim = 4;
  bool parallel = true;
};

/// Names of every registered check, sorted.
std::vector<std::string> verification_checks();

/// Runs the whole property suite. Results are sorted by (check, n) and are a
/// pure function of the options, whatever order the checks finish in.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

nlohmann::json verification_report(const std::vector<CheckResult>& results);

}  // namespace prepspace
