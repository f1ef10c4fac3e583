// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qtherm/table.hpp"

namespace qtherm::cli {

/// One invocation's worth of configuration. Populated from an optional JSON
/// config file, then overridden by command line flags.
struct RunConfig {
  double temperature = 2.0;
  double gamma = 1.0;
  std::optional<double> tau;  // single time instead of a grid
  double tau_min = 0.01;
  double tau_max = 50.0;
  std::size_t tau_steps = 200;
  std::string tau_spacing = "log";  // log | linear
  double theta0 = 3.14159265358979323846;  // ground-state preparation
  double phi0 = 0.0;
  std::uint64_t shots = 10000;
  std::uint64_t repetitions = 200;
  std::uint64_t seed = 42;
  std::size_t grid_theta_steps = 181;
  std::string format = "csv";  // csv | json
  std::string output;          // empty -> stdout
  std::string iad_weight = "thermal";  // verify: thermal | unit
};

/// Loads JSON keys over the defaults in cfg. Unknown keys are an error.
void load_config_file(const std::string& path, RunConfig& cfg);

/// Time grid from cfg (single --tau wins over the min/max/steps triplet).
std::vector<double> tau_grid(const RunConfig& cfg);

Table cmd_trajectory(const RunConfig& cfg);
Table cmd_metrology(const RunConfig& cfg);
Table cmd_experiment(const RunConfig& cfg);
Table cmd_scan(const RunConfig& cfg);

/// Returns the suite report and whether every suite passed.
struct VerifyOutcome {
  Table report;
  bool passed = false;
};
VerifyOutcome cmd_verify(const RunConfig& cfg);

/// Serializes per cfg.format and writes to cfg.output or stdout.
void emit(const Table& table, const RunConfig& cfg);

}  // namespace qtherm::cli
