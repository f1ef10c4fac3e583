// SPDX-License-Identifier: Apache-2.0

#include "qtherm/circuit.hpp"

#include <cmath>
#include <stdexcept>

namespace qtherm {

namespace {

constexpr double kHermTol = 1e-12;

Matrix2c pauli_x() {
  Matrix2c x;
  x << 0.0, 1.0, 1.0, 0.0;
  return x;
}

// system (x) ancilla, row index = 2*i_S + i_A
Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

// One decay-branch pass through the dilation space.
Matrix2c ad_pass(const Matrix2c& rho, double phi) {
  Matrix2c rot;  // R(phi) = exp(-i phi sigma_y)
  rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);

  // CZ with the system as control, triggered on the ground state so that
  // the unflagged ancilla outcome carries the no-jump operator
  Matrix4c cz = Matrix4c::Identity();
  cz(3, 3) = -1.0;

  Matrix2c anc = Matrix2c::Zero();
  anc(0, 0) = 1.0;  // ancilla reference state |0><0|

  const Matrix4c u = kron2(Matrix2c::Identity(), rot) * cz *
                     kron2(Matrix2c::Identity(), rot);
  const TwoQubitState joint(u * kron2(rho, anc) * u.adjoint());
  const Matrix4c& evolved = joint.matrix();

  // project the ancilla, keep both branches; flip the system on the
  // flagged outcome
  Matrix2c branch0, branch1;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      branch0(i, j) = evolved(2 * i, 2 * j);
      branch1(i, j) = evolved(2 * i + 1, 2 * j + 1);
    }
  }
  const Matrix2c x = pauli_x();
  return branch0 + x * branch1 * x;
}

}  // namespace

TwoQubitState::TwoQubitState(const Matrix4c& m) : m_(m) {
  if (!m.allFinite()) {
    throw std::domain_error("TwoQubitState: entries must be finite");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
    throw std::domain_error("TwoQubitState: matrix is not Hermitian");
  }
  if (std::abs(m.trace() - std::complex<double>(1.0, 0.0)) > kHermTol) {
    throw std::domain_error("TwoQubitState: trace must equal 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kHermTol) {
    throw std::domain_error("TwoQubitState: matrix is not positive");
  }
  m_ = 0.5 * (m + m.adjoint().eval());
}

DampingAngle damping_angle(const GadParams& p) {
  const double n = planck_occupation(p.temperature);
  const double k = p.gamma * (2.0 * n + 1.0) * p.tau;
  // cos(2 phi) = e^{-k/2} on the principal branch keeps phi in [0, pi/4]
  return DampingAngle{0.5 * std::acos(std::exp(-0.5 * k))};
}

DensityMatrix simulate_ad_circuit(const DensityMatrix& rho, DampingAngle a) {
  return DensityMatrix(ad_pass(rho.matrix(), a.phi));
}

DensityMatrix simulate_iad_circuit(const DensityMatrix& rho, DampingAngle a) {
  const Matrix2c x = pauli_x();
  return DensityMatrix(x * ad_pass(x * rho.matrix() * x, a.phi) * x);
}

DensityMatrix simulate_gad_circuit(const DensityMatrix& rho,
                                   const GadParams& p) {
  const double n = planck_occupation(p.temperature);
  const double c = 2.0 * n + 1.0;
  const DampingAngle a = damping_angle(p);
  const Matrix2c ad = simulate_ad_circuit(rho, a).matrix();
  const Matrix2c iad = simulate_iad_circuit(rho, a).matrix();
  return DensityMatrix(((n + 1.0) / c) * ad + (n / c) * iad);
}

}  // namespace qtherm
