#pragma once

// Aggregated invariant checks across all modules.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace geomwave {

struct VerifyConfig {
  std::uint64_t seed = 20240611;
  /// Random probes per bank and level for the operator-form checks.
  int probes = 100;
  /// Randomized cases per manifold for geometry and fiber checks.
  int cases = 1000;
  /// Perturb A_1 of the filters seen by the biorthogonality checks.
  bool perturb_mask = false;
  double perturbation = 1e-3;
  /// Add a decomposition of sphere data with an antipodal neighbour pair.
  bool antipodal_sphere = false;
};

/// Parses "key = value" lines; '#' starts a comment and "[section]" headers
/// are ignored. Throws SchemaError naming the line on unknown keys or bad
/// values.
VerifyConfig parse_verify_config(std::string_view text);

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string note;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  const CheckResult* find(std::string_view name) const;
};

/// Runs every check; failures, including density errors, become report
/// entries rather than exceptions.
VerifyReport verify_suite(const VerifyConfig& config = {});

}  // namespace geomwave
