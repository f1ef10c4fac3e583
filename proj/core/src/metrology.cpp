// SPDX-License-Identifier: Apache-2.0

#include "qtherm/metrology.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace qtherm {

namespace {

constexpr double kPurityFloor = 1e-15;   // treat 1-|r|^2 below this as pure
constexpr double kZeroDerivative = 1e-12;
constexpr double kSaturationTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Trajectory {
  BlochState r;
  BlochDerivative d;
  double n2 = 0.0;      // |r|^2
  double dnorm2 = 0.0;  // |dr/dT|^2
};

Trajectory trajectory(const BlochState& prep, const GadParams& p) {
  Trajectory t;
  t.r = evolve_bloch(prep, p);
  t.d = evolve_bloch_dT(prep, p);
  t.n2 = t.r.r1 * t.r.r1 + t.r.r2 * t.r.r2 + t.r.r3 * t.r.r3;
  t.dnorm2 = t.d.dr1 * t.d.dr1 + t.d.dr2 * t.d.dr2 + t.d.dr3 * t.d.dr3;
  return t;
}

bool is_pure(const Trajectory& t) { return 1.0 - t.n2 <= kPurityFloor; }
bool is_stationary(const Trajectory& t) {
  return t.dnorm2 <= kZeroDerivative * kZeroDerivative;
}

// ---- extended-precision fidelity for the finite-difference QFI route ----

using cld = std::complex<long double>;

struct Herm2 {
  // [[a, b], [conj(b), d]] with a, d real
  long double a = 0, d = 0;
  cld b = 0;
};

struct Eig2 {
  long double lo = 0, hi = 0;
  cld vlo[2], vhi[2];  // orthonormal eigenvectors
};

// Closed-form spectral decomposition of a 2x2 Hermitian matrix.
Eig2 eig_herm2(const Herm2& m) {
  Eig2 e;
  const long double mean = 0.5L * (m.a + m.d);
  const long double half = 0.5L * (m.a - m.d);
  const long double s = std::sqrt(half * half + std::norm(m.b));
  e.lo = mean - s;
  e.hi = mean + s;
  if (s == 0.0L) {
    e.vlo[0] = 1;
    e.vlo[1] = 0;
    e.vhi[0] = 0;
    e.vhi[1] = 1;
    return e;
  }
  // eigenvector for hi: both (b, hi-a) and (hi-d, conj(b)) solve the
  // characteristic system; take the better-conditioned one
  cld v0, v1;
  if (std::abs(e.hi - m.d) >= std::abs(e.hi - m.a)) {
    v0 = cld(e.hi - m.d, 0.0L);
    v1 = std::conj(m.b);
  } else {
    v0 = m.b;
    v1 = cld(e.hi - m.a, 0.0L);
  }
  const long double nrm = std::sqrt(std::norm(v0) + std::norm(v1));
  e.vhi[0] = v0 / nrm;
  e.vhi[1] = v1 / nrm;
  e.vlo[0] = -std::conj(e.vhi[1]);
  e.vlo[1] = std::conj(e.vhi[0]);
  return e;
}

std::array<cld, 4> herm_sqrt(const Herm2& m) {
  const Eig2 e = eig_herm2(m);
  if (e.lo < -1e-12L) {
    throw std::domain_error("qfi_numeric_oracle: state is not positive");
  }
  const long double slo = std::sqrt(std::max(e.lo, 0.0L));
  const long double shi = std::sqrt(std::max(e.hi, 0.0L));
  std::array<cld, 4> out{};
  const cld* vecs[2] = {e.vlo, e.vhi};
  const long double vals[2] = {slo, shi};
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        out[2 * i + j] += vals[k] * vecs[k][i] * std::conj(vecs[k][j]);
      }
    }
  }
  return out;
}

Herm2 bloch_to_herm2(const BlochState& r) {
  Herm2 m;
  m.a = 0.5L * (1.0L + (long double)r.r3);
  m.d = 0.5L * (1.0L - (long double)r.r3);
  m.b = cld(0.5L * (long double)r.r1, -0.5L * (long double)r.r2);
  return m;
}

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 of two qubits.
long double fidelity2(const BlochState& ra, const BlochState& rb) {
  const auto sq = herm_sqrt(bloch_to_herm2(ra));
  const Herm2 sb = bloch_to_herm2(rb);
  // m = sqrt(rho) sigma sqrt(rho)
  cld sig[4] = {cld(sb.a, 0.0L), sb.b, std::conj(sb.b), cld(sb.d, 0.0L)};
  cld tmp[4] = {}, m[4] = {};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        tmp[2 * i + j] += sq[2 * i + k] * sig[2 * k + j];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        m[2 * i + j] += tmp[2 * i + k] * sq[2 * k + j];
  Herm2 hm;
  hm.a = m[0].real();
  hm.d = m[3].real();
  hm.b = 0.5L * (m[1] + std::conj(m[2]));
  const Eig2 e = eig_herm2(hm);
  if (e.lo < -1e-12L) {
    throw std::domain_error("qfi_numeric_oracle: fidelity operand not positive");
  }
  const long double t = std::sqrt(std::max(e.lo, 0.0L)) +
                        std::sqrt(std::max(e.hi, 0.0L));
  return t * t;
}

}  // namespace

double mean_energy(const BlochState& r) {
  if (!is_valid(r)) {
    throw std::domain_error("mean_energy: invalid Bloch state");
  }
  return 0.5 * r.r3;
}

double energy_variance(const BlochState& r) {
  if (!is_valid(r)) {
    throw std::domain_error("energy_variance: invalid Bloch state");
  }
  return 0.25 * (1.0 - r.r3 * r.r3);
}

double heat_capacity(const BlochState& prep, const GadParams& p) {
  return 0.5 * evolve_bloch_dT(prep, p).dr3;
}

QfiBreakdown qfi_closed_form(const BlochState& prep, const GadParams& p) {
  const Trajectory t = trajectory(prep, p);
  if (is_pure(t)) {
    if (is_stationary(t)) return QfiBreakdown{};
    throw std::domain_error(
        "qfi_closed_form: pure state with nonzero temperature derivative");
  }
  if (t.n2 == 0.0) {
    // diagonal trajectory crossing the Bloch origin: no polar angle, the
    // population term carries everything
    const double q = t.dnorm2 / (1.0 - t.n2);
    return QfiBreakdown{q, 0.0, q};
  }
  const PolarDerivatives pd = polar_derivatives(t.r, t.d);
  const double population = pd.dr * pd.dr / (1.0 - t.n2);
  const double coherence = t.n2 * pd.dtheta * pd.dtheta;
  return QfiBreakdown{population, coherence, population + coherence};
}

SldCoefficients sld_coefficients(const BlochState& prep, const GadParams& p) {
  const Trajectory t = trajectory(prep, p);
  if (is_pure(t)) {
    if (is_stationary(t)) return SldCoefficients{};  // L = 0
    throw std::domain_error(
        "sld_coefficients: pure state with nonzero temperature derivative");
  }
  const double dot = t.r.r1 * t.d.dr1 + t.r.r2 * t.d.dr2 + t.r.r3 * t.d.dr3;
  const double l0 = -dot / (1.0 - t.n2);
  return SldCoefficients{l0, t.d.dr1 - t.r.r1 * l0, t.d.dr2 - t.r.r2 * l0,
                         t.d.dr3 - t.r.r3 * l0};
}

double qfi_from_sld(const BlochState& prep, const GadParams& p) {
  const SldCoefficients l = sld_coefficients(prep, p);
  const BlochDerivative d = evolve_bloch_dT(prep, p);
  return l.l1 * d.dr1 + l.l2 * d.dr2 + l.l3 * d.dr3;
}

double qfi_numeric_oracle(const BlochState& prep, const GadParams& p,
                          double h) {
  const double temp = p.temperature.value;
  if (h == 0.0) h = 1e-4 * temp;
  if (!(h > 0.0) || h >= temp) {
    throw std::domain_error("qfi_numeric_oracle: invalid step");
  }
  const BlochState lo =
      evolve_bloch(prep, GadParams(Temperature(temp - h), p.gamma, p.tau));
  const BlochState hi =
      evolve_bloch(prep, GadParams(Temperature(temp + h), p.gamma, p.tau));
  const long double f = fidelity2(lo, hi);
  const long double dt = 2.0L * (long double)h;
  return (double)(8.0L * (1.0L - std::sqrt(f)) / (dt * dt));
}

double equilibrium_qfi(Temperature t) {
  const double r3 = equilibrium_bloch(t).r3;
  const double var = 0.25 * (1.0 - r3 * r3);
  const double t2 = t.value * t.value;
  return var / (t2 * t2);
}

double equilibrium_hc(Temperature t) {
  const double r3 = equilibrium_bloch(t).r3;
  return 0.25 * (1.0 - r3 * r3) / (t.value * t.value);
}

std::optional<double> bound_ratio(const BlochState& prep, const GadParams& p) {
  const double c = heat_capacity(prep, p);
  if (c == 0.0) return std::nullopt;
  const double q = qfi_closed_form(prep, p).total;
  const double var = energy_variance(evolve_bloch(prep, p));
  return q * var / (c * c);
}

double classical_fisher_energy(const BlochState& prep, const GadParams& p) {
  const double var = energy_variance(evolve_bloch(prep, p));
  if (var == 0.0) {
    throw std::domain_error("classical_fisher_energy: zero energy variance");
  }
  const double c = heat_capacity(prep, p);
  return c * c / var;
}

double qcrb(const BlochState& prep, const GadParams& p, std::uint64_t m) {
  if (m < 1) throw std::domain_error("qcrb: m must be at least 1");
  const double q = qfi_closed_form(prep, p).total;
  if (q <= 0.0) return kInf;
  return 1.0 / std::sqrt((double)m * q);
}

double crb_energy(const BlochState& prep, const GadParams& p,
                  std::uint64_t m) {
  if (m < 1) throw std::domain_error("crb_energy: m must be at least 1");
  const double c = heat_capacity(prep, p);
  if (c == 0.0) return kInf;
  const double var = energy_variance(evolve_bloch(prep, p));
  return std::sqrt(var / ((double)m * c * c));
}

MetrologyReport metrology_report(const BlochState& prep, const GadParams& p,
                                 std::uint64_t m) {
  MetrologyReport rep;
  const BlochState r = evolve_bloch(prep, p);
  rep.mean_energy = mean_energy(r);
  rep.energy_variance = energy_variance(r);
  rep.heat_capacity = heat_capacity(prep, p);
  const QfiBreakdown q = qfi_closed_form(prep, p);
  rep.qfi = q.total;
  rep.qfi_population = q.population;
  rep.qfi_coherence = q.coherence;
  rep.classical_fisher =
      rep.energy_variance == 0.0
          ? 0.0
          : rep.heat_capacity * rep.heat_capacity / rep.energy_variance;
  rep.bound_ratio = bound_ratio(prep, p);
  rep.crb = crb_energy(prep, p, m);
  rep.qcrb = qcrb(prep, p, m);
  rep.saturated =
      rep.bound_ratio && std::abs(*rep.bound_ratio - 1.0) <= kSaturationTol;
  if (rep.heat_capacity != 0.0) {
    rep.gibbs_linearity =
        rep.qfi * p.temperature.value * p.temperature.value / rep.heat_capacity;
  }
  return rep;
}

}  // namespace qtherm
