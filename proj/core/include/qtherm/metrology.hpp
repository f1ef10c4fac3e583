// SPDX-License-Identifier: Apache-2.0
//
// Metrological and thermodynamic functionals of the probe trajectory: mean
// energy, energy variance, generalized heat capacity, quantum Fisher
// information by three routes (polar closed form, SLD recombination,
// fidelity finite differences), equilibrium limits, the bound ratio
// Q * varE / C^2 >= 1, and the classical/quantum Cramer-Rao bounds.

#pragma once

#include <cstdint>
#include <optional>

#include "qtherm/model.hpp"

namespace qtherm {

/// tr(H rho) with H = sigma_3/2, i.e. r3/2.
double mean_energy(const BlochState& r);

/// tr((H - E)^2 rho) = (1 - r3^2)/4; zero only on the poles.
double energy_variance(const BlochState& r);

/// Generalized heat capacity C_T(tau) = d E_T(tau) / dT = (d r3/dT)/2.
/// Can be negative out of equilibrium; only its square enters the bound.
double heat_capacity(const BlochState& prep, const GadParams& p);

/// QFI split into its population and coherence parts:
///   Q = (d|r|/dT)^2 / (1 - |r|^2) + |r|^2 (dtheta/dT)^2
struct QfiBreakdown {
  double population = 0.0;
  double coherence = 0.0;
  double total = 0.0;
};

/// Closed-form QFI of the evolved state. A pure evolved state with nonzero
/// temperature derivative is singular (cannot occur for tau > 0 under this
/// channel) and raises std::domain_error; a temperature-independent state
/// has QFI zero.
QfiBreakdown qfi_closed_form(const BlochState& prep, const GadParams& p);

/// Pauli expansion L = l0 + l.sigma of the symmetric logarithmic derivative:
///   l0 = -(r . dr/dT) / (1 - |r|^2),   l_j = d r_j/dT - r_j l0
/// so that l_j + r_j l0 = d r_j/dT and l0 + sum_j r_j l_j = 0.
struct SldCoefficients {
  double l0 = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
};

SldCoefficients sld_coefficients(const BlochState& prep, const GadParams& p);

/// Q = tr(L d rho/dT) = sum_j l_j d r_j/dT. Agrees with qfi_closed_form to
/// 1e-9 relative; kept as an independent algebraic route.
double qfi_from_sld(const BlochState& prep, const GadParams& p);

/// Finite-difference verification route: Q ~ 8 (1 - sqrt(F-)) / (2h)^2 with
/// F the Uhlmann fidelity between the states at T-h and T+h, computed from
/// 2x2 spectral decompositions in extended precision (the second difference
/// sits many digits below 1). h = 0 selects the default step 1e-4 * T.
double qfi_numeric_oracle(const BlochState& prep, const GadParams& p,
                          double h = 0.0);

/// Gibbs-state limits: Q_eq = varE_eq / T^4 and C_eq = varE_eq / T^2, which
/// obey Q_eq = C_eq / T^2.
double equilibrium_qfi(Temperature t);
double equilibrium_hc(Temperature t);

/// Q * varE / C^2. At least 1 wherever defined; exactly 1 for diagonal
/// trajectories and at equilibrium. Undefined (nullopt) when C = 0.
std::optional<double> bound_ratio(const BlochState& prep, const GadParams& p);

/// Fisher information of the two-outcome energy measurement,
/// C^2 / varE = (d r3/dT)^2 / (1 - r3^2). Throws on varE = 0.
double classical_fisher_energy(const BlochState& prep, const GadParams& p);

/// Square-root Cramer-Rao bounds on the temperature after m measurements,
/// 1/sqrt(m Q) and 1/sqrt(m F_cl). Zero information yields +infinity (scans
/// traverse the QFI zero, where the quantum bound diverges).
double qcrb(const BlochState& prep, const GadParams& p, std::uint64_t m);
double crb_energy(const BlochState& prep, const GadParams& p, std::uint64_t m);

/// Everything above at one configuration.
struct MetrologyReport {
  double mean_energy = 0.0;
  double energy_variance = 0.0;
  double heat_capacity = 0.0;
  double qfi = 0.0;
  double qfi_population = 0.0;
  double qfi_coherence = 0.0;
  double classical_fisher = 0.0;   // 0 when varE = 0
  std::optional<double> bound_ratio;
  double crb = 0.0;                // +inf tags zero information
  double qcrb = 0.0;
  bool saturated = false;          // |bound_ratio - 1| <= 1e-9
  /// Diagnostic Q T^2 / C: equals 1 at equilibrium, where QFI and heat
  /// capacity are linearly related; deviates from 1 along non-equilibrium
  /// trajectories.
  std::optional<double> gibbs_linearity;
};

MetrologyReport metrology_report(const BlochState& prep, const GadParams& p,
                                 std::uint64_t m = 1);

}  // namespace qtherm
