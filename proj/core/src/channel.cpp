// SPDX-License-Identifier: Apache-2.0

#include "qtherm/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace qtherm {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kCompletenessReject = 1e-9;

using Eigen::Vector2cd;
using complexd = std::complex<double>;

}  // namespace

DensityMatrix::DensityMatrix(const Matrix2c& m) : m_(m) {
  if (!m.allFinite()) {
    throw std::domain_error("DensityMatrix: entries must be finite");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
    throw std::domain_error("DensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(m.trace() - complexd(1.0, 0.0)) > kHermTol) {
    throw std::domain_error("DensityMatrix: trace must equal 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kHermTol) {
    throw std::domain_error("DensityMatrix: matrix is not positive");
  }
  // symmetrize away roundoff so downstream algebra sees an exactly
  // Hermitian operator
  m_ = 0.5 * (m + m.adjoint().eval());
}

KrausSet gad_kraus_set(const GadParams& p, IadWeight w) {
  const double n = planck_occupation(p.temperature);
  const double c = 2.0 * n + 1.0;
  const double k = p.gamma * c * p.tau;
  const double damp = std::exp(-0.5 * k);            // e^{-gamma(2N+1)tau/2}
  const double jump = std::sqrt(-std::expm1(-k));    // sqrt(1 - e^{-k})
  const double w_ad = std::sqrt((n + 1.0) / c);
  const double w_iad =
      w == IadWeight::Thermal ? std::sqrt(n / c) : std::sqrt(1.0 / c);

  Matrix2c k1, k2, k3, k4;
  // basis order (excited, ground); decay damps the excited amplitude
  k1 << w_ad * damp, 0.0, 0.0, w_ad;
  k2 << 0.0, 0.0, w_ad * jump, 0.0;   // |g><e|
  k3 << w_iad, 0.0, 0.0, w_iad * damp;
  k4 << 0.0, w_iad * jump, 0.0, 0.0;  // |e><g|

  KrausSet ks;
  ks.ops = {{k1, KrausBranch::Decay},
            {k2, KrausBranch::Decay},
            {k3, KrausBranch::Absorption},
            {k4, KrausBranch::Absorption}};
  return ks;
}

DensityMatrix apply_channel(const KrausSet& ks, const DensityMatrix& rho) {
  if (cptp_check(ks).completeness_residual > kCompletenessReject) {
    throw std::domain_error("apply_channel: Kraus set is not complete");
  }
  Matrix2c out = Matrix2c::Zero();
  for (const auto& k : ks.ops) {
    out += k.op * rho.matrix() * k.op.adjoint();
  }
  return DensityMatrix(out);
}

DensityMatrix bloch_to_density(const BlochState& r) {
  if (!is_valid(r)) {
    throw std::domain_error("bloch_to_density: invalid Bloch state");
  }
  Matrix2c m;
  m << complexd(0.5 * (1.0 + r.r3), 0.0), complexd(0.5 * r.r1, -0.5 * r.r2),
      complexd(0.5 * r.r1, 0.5 * r.r2), complexd(0.5 * (1.0 - r.r3), 0.0);
  return DensityMatrix(m);
}

BlochState density_to_bloch(const DensityMatrix& rho) {
  const Matrix2c& m = rho.matrix();
  return BlochState{2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(),
                    m(0, 0).real() - m(1, 1).real()};
}

CptpReport cptp_check(const KrausSet& ks) {
  Matrix2c total = Matrix2c::Zero();
  double decay = 0.0;
  double absorption = 0.0;
  for (const auto& k : ks.ops) {
    const Matrix2c kk = k.op.adjoint() * k.op;
    total += kk;
    const double half_trace = 0.5 * kk.trace().real();
    (k.branch == KrausBranch::Decay ? decay : absorption) += half_trace;
  }
  const Matrix2c dev = total - Matrix2c::Identity();
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(dev, Eigen::EigenvaluesOnly);
  const double residual = es.eigenvalues().cwiseAbs().maxCoeff();
  return CptpReport{residual, decay, absorption};
}

}  // namespace qtherm
