// SPDX-License-Identifier: Apache-2.0
//
// Two-qubit (system + ancilla) gate simulation of the decay and absorption
// circuits, with the measurement-conditioned bit-flip correction. Verifies
// the gate construction against the Kraus channel.

#pragma once

#include "qtherm/channel.hpp"

namespace qtherm {

using Matrix4c = Eigen::Matrix4cd;

/// 4x4 density matrix over system (x) ancilla. Same invariants as
/// DensityMatrix (Hermitian, unit trace, positive to 1e-12).
class TwoQubitState {
 public:
  explicit TwoQubitState(const Matrix4c& m);
  const Matrix4c& matrix() const { return m_; }

 private:
  Matrix4c m_;
};

/// Ancilla rotation angle phi in [0, pi/4] calibrated so that
/// cos^2(2 phi) = e^{-gamma(2N+1)tau}.
struct DampingAngle {
  double phi = 0.0;
};

DampingAngle damping_angle(const GadParams& p);

/// One decay branch pass: ancilla in |0>, R(phi) - CZ (system as control) -
/// R(phi), measure the ancilla, apply sigma_x to the system on the flagged
/// outcome, average both outcomes. R(phi) = exp(-i phi sigma_y); the
/// unflagged outcome carries the no-jump operator. Equals the normalized
/// decay branch of the Kraus channel.
DensityMatrix simulate_ad_circuit(const DensityMatrix& rho, DampingAngle a);

/// Absorption branch: the decay circuit conjugated by sigma_x on the system
/// (the extra sigma_z of the optical layout is a phase that drops out of the
/// simulated channel).
DensityMatrix simulate_iad_circuit(const DensityMatrix& rho, DampingAngle a);

/// Full channel: decay and absorption branch outputs combined with weights
/// (N+1)/(2N+1) and N/(2N+1). Matches apply_channel(gad_kraus_set(p), .).
DensityMatrix simulate_gad_circuit(const DensityMatrix& rho,
                                   const GadParams& p);

}  // namespace qtherm
