// SPDX-License-Identifier: Apache-2.0
//
// Density-matrix representation of the probe and the Kraus realization of
// the thermal (generalized amplitude damping) channel, split into its decay
// (AD) and absorption (IAD) branches.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qtherm/model.hpp"

namespace qtherm {

using Matrix2c = Eigen::Matrix2cd;

/// 2x2 density matrix. The constructor enforces Hermiticity, unit trace and
/// positivity to 1e-12 and throws std::domain_error otherwise. Basis order is
/// (excited, ground) with the excited state the +1 eigenstate of sigma_3.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix2c& m);
  const Matrix2c& matrix() const { return m_; }

 private:
  Matrix2c m_;
};

enum class KrausBranch { Decay, Absorption };

struct KrausOperator {
  Matrix2c op;
  KrausBranch branch;
};

/// Squared weight carried by the absorption branch:
///   Thermal       N/(2N+1)  -- trace preserving
///   UnitNumerator 1/(2N+1)  -- a variant that appears in the literature;
///                              it violates trace preservation for N != 1
///                              and is kept as a negative control for the
///                              verification suite.
enum class IadWeight { Thermal, UnitNumerator };

struct KrausSet {
  std::vector<KrausOperator> ops;
};

/// The four Kraus operators of the channel at parameters p. The decay branch
/// carries squared weight (N+1)/(2N+1), damps the excited amplitude by
/// e^{-gamma(2N+1)tau/2} and jumps excited -> ground; the absorption branch
/// is its bit-flip conjugate with the weight above.
KrausSet gad_kraus_set(const GadParams& p, IadWeight w = IadWeight::Thermal);

/// rho -> sum_i K_i rho K_i^dagger. Requires a completeness residual below
/// 1e-9, otherwise throws std::domain_error.
DensityMatrix apply_channel(const KrausSet& ks, const DensityMatrix& rho);

/// rho = (1 + r.sigma)/2 and its inverse r_j = tr(rho sigma_j).
DensityMatrix bloch_to_density(const BlochState& r);
BlochState density_to_bloch(const DensityMatrix& rho);

struct CptpReport {
  /// Operator-norm distance of sum_i K_i^dagger K_i from the identity.
  double completeness_residual = 0.0;
  /// tr(sum_branch K^dagger K)/2 per branch.
  double decay_weight = 0.0;
  double absorption_weight = 0.0;
};

CptpReport cptp_check(const KrausSet& ks);

}  // namespace qtherm
