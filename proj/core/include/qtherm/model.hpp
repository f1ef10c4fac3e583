// SPDX-License-Identifier: Apache-2.0
//
// Two-level probe in a resonant bosonic bath: thermal occupation, analytic
// Bloch-vector evolution under the generalized-amplitude-damping master
// equation, and analytic temperature derivatives of the trajectory.
//
// Natural units throughout: hbar = omega = k_B = 1. Temperatures are in
// hbar*omega/k_B, rates in omega, times in 1/gamma. The excited state is the
// +1 eigenstate of sigma_3, so the mean energy is r3/2 and the thermal fixed
// point has negative r3.

#pragma once

namespace qtherm {

/// Bath temperature in natural units. Must be positive and finite.
struct Temperature {
  explicit Temperature(double v);
  double value;
};

/// Parameters fixing one application of the thermal channel:
/// bath temperature, coupling rate gamma > 0, interaction time tau >= 0.
struct GadParams {
  GadParams(Temperature t, double gamma, double tau);
  Temperature temperature;
  double gamma;
  double tau;
};

/// Cartesian Bloch vector. Valid states satisfy r1^2+r2^2+r3^2 <= 1 (within
/// 1e-12); all channel operations preserve this.
struct BlochState {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};

/// Polar form of a Bloch vector: length r in [0,1], polar angle theta in
/// [0,pi] measured from the +3 axis, azimuth phi in [-pi,pi].
/// The origin maps to (0, 0, 0) by convention.
struct PolarBloch {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Temperature derivative of each Cartesian Bloch component at fixed
/// preparation, gamma and tau.
struct BlochDerivative {
  double dr1 = 0.0;
  double dr2 = 0.0;
  double dr3 = 0.0;
};

/// d|r|/dT and dtheta/dT along the trajectory.
struct PolarDerivatives {
  double dr = 0.0;
  double dtheta = 0.0;
};

double bloch_norm(const BlochState& r);
bool is_valid(const BlochState& r);

/// Mean number of resonant bosonic excitations, N = 1/(e^{1/T} - 1).
/// Strictly increasing in T; tends to 0 as T -> 0 and to T as T -> inf.
double planck_occupation(Temperature t);

/// dN/dT = e^{1/T} / (T^2 (e^{1/T}-1)^2), evaluated as N(N+1)/T^2 which is
/// the same expression in a form that stays finite at both temperature
/// extremes. Always positive.
double occupation_derivative(Temperature t);

/// Propagates a Bloch vector for time tau under the thermal channel:
///   r_{1,2}(tau) = r_{1,2}(0) e^{-gamma(2N+1)tau/2}
///   r_3(tau)     = r_3(0) e^{-gamma(2N+1)tau} - (1 - e^{-gamma(2N+1)tau})/(2N+1)
BlochState evolve_bloch(const BlochState& r0, const GadParams& p);

/// Temperature derivative of evolve_bloch at fixed (r0, gamma, tau), by the
/// chain rule through N(T). The preparation r0 is taken T-independent.
BlochDerivative evolve_bloch_dT(const BlochState& r0, const GadParams& p);

/// The unique fixed point (0, 0, -1/(2N+1)) of the channel; equals
/// -tanh(1/(2T)) on the third component (the Gibbs state of the probe).
BlochState equilibrium_bloch(Temperature t);

PolarBloch to_polar(const BlochState& r);
BlochState from_polar(const PolarBloch& p);

/// Pure-state preparation with polar angle theta0 and azimuth phi0.
BlochState prepare_pure(double theta0, double phi0 = 0.0);

/// Chain rule from Cartesian derivatives to (d|r|/dT, dtheta/dT).
/// On the poles (r1 = r2 = 0) dtheta is the limit along the trajectory,
/// which is 0 because poles are preserved by the channel. The Bloch origin
/// has no polar angle and raises a degenerate-input error.
PolarDerivatives polar_derivatives(const BlochState& r, const BlochDerivative& d);

}  // namespace qtherm
