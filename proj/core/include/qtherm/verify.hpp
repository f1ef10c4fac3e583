// SPDX-License-Identifier: Apache-2.0
//
// Cross-module verification suites: analytic Bloch propagation against the
// Kraus channel, the gate circuit against the Kraus channel, completeness of
// every generated Kraus set, three-route QFI agreement, and finite
// difference checks of the analytic temperature derivatives.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtherm/channel.hpp"

namespace qtherm::verify {

struct SuiteResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct Options {
  /// Injecting IadWeight::UnitNumerator is the negative control: the
  /// completeness suite must then fail for any N != 1.
  IadWeight iad_weight = IadWeight::Thermal;
  std::uint64_t seed = 0x5eed0001ULL;
  std::size_t random_triples = 120;
  std::size_t qfi_grid_points = 200;
};

std::vector<SuiteResult> run_suites(const Options& opts = {});
bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace qtherm::verify
