// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace uniest::tools {

/// One acceptance criterion. \c residual is compared against \c tolerance;
/// side conditions (ranks, lower bounds, runtime) go into \c conditions_ok and
/// are explained in \c detail when they fail.
struct CheckResult {
  int id = 0;
  std::string name;
  std::string expected;
  std::string computed;
  double residual = 0.0;
  double tolerance = 0.0;
  bool conditions_ok = true;
  std::string detail;
  double seconds = 0.0;

  bool passed() const noexcept { return conditions_ok && residual <= tolerance; }
};

struct VerifyOptions {
  std::uint64_t seed = 2026;
  /// Replaces the tolerance of every check when set.
  std::optional<double> tolerance;
  /// Frozen d = 3 witness to re-check under criterion 15.
  std::optional<std::filesystem::path> witness_fixture;
  /// Where to write the d = 3 witness when the search finds one.
  std::optional<std::filesystem::path> witness_out;
};

using CheckFn = std::function<CheckResult(const VerifyOptions&)>;

/// The fifteen checks in order; ids run from 1 to 15.
const std::vector<CheckFn>& acceptance_checks();

CheckResult run_check(int id, const VerifyOptions& options);
std::vector<CheckResult> run_acceptance_suite(const VerifyOptions& options);

/// "PASS 01 name | expected ... | computed ... | residual ... <= tol ..."
std::string format_check(const CheckResult& result);
nlohmann::json check_to_json(const CheckResult& result);

}  // namespace uniest::tools
