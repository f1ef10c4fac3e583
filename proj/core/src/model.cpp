// SPDX-License-Identifier: Apache-2.0

#include "qtherm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qtherm {

namespace {
constexpr double kBlochTol = 1e-12;
}

Temperature::Temperature(double v) : value(v) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw std::domain_error("Temperature must be positive and finite");
  }
}

GadParams::GadParams(Temperature t, double g, double tau_)
    : temperature(t), gamma(g), tau(tau_) {
  if (!std::isfinite(g) || g <= 0.0) {
    throw std::domain_error("GadParams: gamma must be positive and finite");
  }
  if (!std::isfinite(tau_) || tau_ < 0.0) {
    throw std::domain_error("GadParams: tau must be non-negative and finite");
  }
}

double bloch_norm(const BlochState& r) {
  return std::sqrt(r.r1 * r.r1 + r.r2 * r.r2 + r.r3 * r.r3);
}

bool is_valid(const BlochState& r) {
  if (!std::isfinite(r.r1) || !std::isfinite(r.r2) || !std::isfinite(r.r3)) {
    return false;
  }
  return r.r1 * r.r1 + r.r2 * r.r2 + r.r3 * r.r3 <= 1.0 + kBlochTol;
}

double planck_occupation(Temperature t) {
  // 1/expm1 keeps full precision for large T and underflows cleanly to 0
  // for small T (expm1 -> inf).
  return 1.0 / std::expm1(1.0 / t.value);
}

double occupation_derivative(Temperature t) {
  const double n = planck_occupation(t);
  return n * (n + 1.0) / (t.value * t.value);
}

BlochState evolve_bloch(const BlochState& r0, const GadParams& p) {
  if (!is_valid(r0)) {
    throw std::domain_error("evolve_bloch: invalid Bloch state");
  }
  const double n = planck_occupation(p.temperature);
  const double c = 2.0 * n + 1.0;
  const double k = p.gamma * c * p.tau;
  const double eh = std::exp(-0.5 * k);
  const double e1 = std::exp(-k);
  // (e^{-k} - 1)/c via expm1 to avoid cancellation at small k
  const double em1 = std::expm1(-k);
  return BlochState{r0.r1 * eh, r0.r2 * eh, r0.r3 * e1 + em1 / c};
}

BlochDerivative evolve_bloch_dT(const BlochState& r0, const GadParams& p) {
  if (!is_valid(r0)) {
    throw std::domain_error("evolve_bloch_dT: invalid Bloch state");
  }
  const double n = planck_occupation(p.temperature);
  const double dn = occupation_derivative(p.temperature);
  const double c = 2.0 * n + 1.0;
  const double k = p.gamma * c * p.tau;
  const double eh = std::exp(-0.5 * k);
  const double e1 = std::exp(-k);
  const double one_me = -std::expm1(-k);  // 1 - e^{-k}
  const double dk = 2.0 * p.gamma * p.tau * dn;
  const double dperp = -0.5 * dk * eh;
  const double dr3 =
      -r0.r3 * e1 * dk - (dk * e1 * c - one_me * 2.0 * dn) / (c * c);
  return BlochDerivative{r0.r1 * dperp, r0.r2 * dperp, dr3};
}

BlochState equilibrium_bloch(Temperature t) {
  const double c = 2.0 * planck_occupation(t) + 1.0;
  return BlochState{0.0, 0.0, -1.0 / c};
}

PolarBloch to_polar(const BlochState& r) {
  if (!is_valid(r)) {
    throw std::domain_error("to_polar: invalid Bloch state");
  }
  const double rperp = std::hypot(r.r1, r.r2);
  const double len = std::hypot(rperp, r.r3);
  if (len == 0.0) {
    return PolarBloch{0.0, 0.0, 0.0};
  }
  return PolarBloch{len, std::atan2(rperp, r.r3), std::atan2(r.r2, r.r1)};
}

BlochState from_polar(const PolarBloch& p) {
  constexpr double kPi = 3.14159265358979323846;
  if (!std::isfinite(p.r) || p.r < 0.0 || p.r > 1.0 + kBlochTol) {
    throw std::domain_error("from_polar: r must lie in [0, 1]");
  }
  if (!std::isfinite(p.theta) || p.theta < -kBlochTol ||
      p.theta > kPi + kBlochTol) {
    throw std::domain_error("from_polar: theta must lie in [0, pi]");
  }
  if (!std::isfinite(p.phi)) {
    throw std::domain_error("from_polar: phi must be finite");
  }
  const double s = std::sin(p.theta);
  return BlochState{p.r * s * std::cos(p.phi), p.r * s * std::sin(p.phi),
                    p.r * std::cos(p.theta)};
}

BlochState prepare_pure(double theta0, double phi0) {
  return from_polar(PolarBloch{1.0, theta0, phi0});
}

PolarDerivatives polar_derivatives(const BlochState& r,
                                   const BlochDerivative& d) {
  const double n2 = r.r1 * r.r1 + r.r2 * r.r2 + r.r3 * r.r3;
  if (n2 == 0.0) {
    throw std::domain_error(
        "polar_derivatives: Bloch origin has no polar angle");
  }
  const double len = std::sqrt(n2);
  const double dot = r.r1 * d.dr1 + r.r2 * d.dr2 + r.r3 * d.dr3;
  const double dr = dot / len;
  const double rperp = std::hypot(r.r1, r.r2);
  if (rperp == 0.0) {
    // pole: the channel keeps diagonal trajectories diagonal
    return PolarDerivatives{dr, 0.0};
  }
  const double dperp = (r.r1 * d.dr1 + r.r2 * d.dr2) / rperp;
  return PolarDerivatives{dr, (r.r3 * dperp - rperp * d.dr3) / n2};
}

}  // namespace qtherm
