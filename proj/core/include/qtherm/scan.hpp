// SPDX-License-Identifier: Apache-2.0
//
// Grid scans and optimizations over preparation angle and interaction time:
// the QFI landscape, optimal measurement time, optimal preparation, the QFI
// zero of the excited-state trajectory, and plot-ready datasets for the
// bound-saturation curves, the uncertainty-versus-bounds comparison and the
// landscape itself.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qtherm/metrology.hpp"
#include "qtherm/table.hpp"

namespace qtherm {

struct ScanGrid {
  std::vector<double> theta0;     // polar angles in [0, pi], sorted
  std::vector<double> gamma_tau;  // dimensionless times, sorted, >= 0
  Temperature temperature;
  double phi0 = 0.0;  // the QFI does not depend on it; kept for slicing
};

/// Default landscape grid: 181 angles over [0, pi], 400 log-spaced times
/// over [0.01, 10].
ScanGrid default_grid(Temperature t);

struct ScanResult {
  std::size_t n_theta = 0;
  std::size_t n_tau = 0;
  std::vector<double> theta0;
  std::vector<double> gamma_tau;
  /// row-major: cell(i, j) = cells[i * n_tau + j] for theta0[i], gamma_tau[j]
  std::vector<MetrologyReport> cells;
  std::size_t argmax_theta = 0;
  std::size_t argmax_tau = 0;
  double max_qfi = 0.0;
  /// marginal optima: best time index per angle and best angle index per time
  std::vector<std::size_t> best_tau_per_theta;
  std::vector<std::size_t> best_theta_per_tau;

  const MetrologyReport& at(std::size_t i, std::size_t j) const {
    return cells[i * n_tau + j];
  }
};

/// Dense deterministic evaluation of the QFI and bound ratio over the grid.
/// Argmax ties break toward the smallest gamma_tau, then the smallest theta0.
ScanResult scan_qfi(const ScanGrid& g);

struct OptimalTime {
  double gamma_tau = 0.0;
  double qfi = 0.0;
  bool interior = false;  // false when the maximum sits on a bracket edge
};

/// Grid argmax over [lo, hi] followed by golden-section refinement to 1e-6
/// in gamma_tau. An argmax on the bracket edge is flagged, not refined.
OptimalTime optimal_time(const BlochState& prep, Temperature t, double lo,
                         double hi);

struct OptimalPreparation {
  double theta0 = 0.0;
  double gamma_tau = 0.0;
  double qfi = 0.0;
  bool theta_interior = false;
  bool tau_interior = false;
};

/// Argmax over theta0 in [0, pi] at fixed gamma_tau, or jointly over
/// (theta0, gamma_tau) with gamma_tau free in [0.01, 10] when nullopt.
/// phi0 is irrelevant to the QFI and fixed at 0.
OptimalPreparation optimal_preparation(Temperature t,
                                       std::optional<double> gamma_tau);

/// Bisection root of d r3/dT along a diagonal trajectory (its zero is the
/// QFI zero there), searched on gamma_tau in (0, 50] to 1e-10. Requires a
/// diagonal preparation; nullopt when the derivative never changes sign
/// (e.g. the ground state).
std::optional<double> find_qfi_zero(const BlochState& prep, Temperature t);

enum class FigureKind {
  BoundComparison,       // QFI vs C^2/varE curves for four preparations
  UncertaintyVsBounds,   // CRB/QCRB curves with simulated uncertainties
  QfiLandscape,          // landscape grid plus the gamma_tau = 0.6 slice
};

struct FigureParams {
  Temperature temperature{2.0};
  double gamma = 1.0;
  std::size_t tau_steps = 120;
  double tau_min = 0.01;
  double tau_max = 10.0;
  std::size_t theta_steps = 181;
  std::uint64_t shots = 10000;     // UncertaintyVsBounds only
  std::uint64_t repetitions = 200; // UncertaintyVsBounds only
  std::uint64_t seed = 42;
};

Table figure_curves(FigureKind which, const FigureParams& params);

}  // namespace qtherm
