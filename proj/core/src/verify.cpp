// SPDX-License-Identifier: Apache-2.0

#include "qtherm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "qtherm/circuit.hpp"
#include "qtherm/metrology.hpp"

namespace qtherm::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Triple {
  BlochState prep;
  GadParams params;
};

double uniform(std::mt19937_64& gen, double lo, double hi) {
  const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double log_uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo * std::exp(uniform(gen, 0.0, std::log(hi / lo)));
}

std::vector<Triple> random_triples(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 gen(seed);
  std::vector<Triple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = uniform(gen, 0.0, kPi);
    const double phi = uniform(gen, -kPi, kPi);
    const double len = uniform(gen, 0.0, 1.0);  // mixed preparations too
    const double temp = log_uniform(gen, 0.2, 10.0);
    const double gt = log_uniform(gen, 0.05, 10.0);
    const double gamma = uniform(gen, 0.5, 2.0);
    out.push_back(Triple{from_polar(PolarBloch{len, theta, phi}),
                         GadParams(Temperature(temp), gamma, gt / gamma)});
  }
  return out;
}

// the standard derivative grid: both poles and the equator preparation over
// a wide (T, gamma*tau) rectangle
std::vector<Triple> standard_grid() {
  std::vector<Triple> out;
  for (const double theta : {0.0, kPi / 2.0, kPi}) {
    for (const double temp : {0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      for (const double gt : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        out.push_back(
            Triple{prepare_pure(theta), GadParams(Temperature(temp), 1.0, gt)});
      }
    }
  }
  return out;
}

// Central differences at h and 2h combined to cancel the leading error term,
// so the step can stay large enough to keep roundoff under the tolerance.
BlochDerivative fd_trajectory(const BlochState& prep, const GadParams& p) {
  const double temp = p.temperature.value;
  const double h = 1e-4 * temp;
  const auto at = [&](double tt) {
    return evolve_bloch(prep, GadParams(Temperature(tt), p.gamma, p.tau));
  };
  const BlochState p1 = at(temp + h), m1 = at(temp - h);
  const BlochState p2 = at(temp + 2.0 * h), m2 = at(temp - 2.0 * h);
  const auto combine = [&](double f_p1, double f_m1, double f_p2,
                           double f_m2) {
    const double d1 = (f_p1 - f_m1) / (2.0 * h);
    const double d2 = (f_p2 - f_m2) / (4.0 * h);
    return (4.0 * d1 - d2) / 3.0;
  };
  return BlochDerivative{combine(p1.r1, m1.r1, p2.r1, m2.r1),
                         combine(p1.r2, m1.r2, p2.r2, m2.r2),
                         combine(p1.r3, m1.r3, p2.r3, m2.r3)};
}

double max_abs3(double a, double b, double c) {
  return std::max({std::abs(a), std::abs(b), std::abs(c)});
}

SuiteResult run_one(const std::string& name, double tolerance,
                    const std::function<double()>& body) {
  SuiteResult res{name, 0.0, tolerance, false};
  try {
    res.max_residual = body();
  } catch (const std::exception&) {
    res.max_residual = kInf;
  }
  res.passed = res.max_residual <= tolerance;
  return res;
}

}  // namespace

std::vector<SuiteResult> run_suites(const Options& opts) {
  const auto triples = random_triples(opts.seed, opts.random_triples);
  const auto qfi_triples =
      random_triples(opts.seed ^ 0x9e3779b97f4a7c15ULL, opts.qfi_grid_points);
  const auto grid = standard_grid();

  std::vector<SuiteResult> out;

  out.push_back(run_one("bloch-vs-kraus", 1e-12, [&] {
    double worst = 0.0;
    for (const auto& [prep, p] : triples) {
      const KrausSet ks = gad_kraus_set(p, opts.iad_weight);
      const BlochState via_kraus =
          density_to_bloch(apply_channel(ks, bloch_to_density(prep)));
      const BlochState direct = evolve_bloch(prep, p);
      worst = std::max(worst, max_abs3(via_kraus.r1 - direct.r1,
                                       via_kraus.r2 - direct.r2,
                                       via_kraus.r3 - direct.r3));
    }
    return worst;
  }));

  out.push_back(run_one("circuit-vs-kraus", 1e-12, [&] {
    double worst = 0.0;
    for (const auto& [prep, p] : triples) {
      const KrausSet ks = gad_kraus_set(p, opts.iad_weight);
      const DensityMatrix rho = bloch_to_density(prep);
      const Matrix2c diff = simulate_gad_circuit(rho, p).matrix() -
                            apply_channel(ks, rho).matrix();
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
    return worst;
  }));

  out.push_back(run_one("cptp-completeness", 1e-12, [&] {
    double worst = 0.0;
    for (const auto& [prep, p] : triples) {
      const CptpReport rep = cptp_check(gad_kraus_set(p, opts.iad_weight));
      worst = std::max(worst, rep.completeness_residual);
    }
    return worst;
  }));

  out.push_back(run_one("qfi-sld-route", 1e-9, [&] {
    double worst = 0.0;
    for (const auto& [prep, p] : qfi_triples) {
      const double a = qfi_closed_form(prep, p).total;
      const double b = qfi_from_sld(prep, p);
      worst = std::max(worst,
                       std::abs(a - b) / std::max({std::abs(a), std::abs(b),
                                                   1e-12}));
    }
    return worst;
  }));

  out.push_back(run_one("qfi-fidelity-oracle", 1e-5, [&] {
    // points with QFI below 1e-4 are degenerate for a second-order finite
    // difference and are held to the same absolute scale instead
    double worst = 0.0;
    for (const auto& [prep, p] : qfi_triples) {
      const double a = qfi_closed_form(prep, p).total;
      const double b = qfi_numeric_oracle(prep, p);
      worst = std::max(worst,
                       std::abs(a - b) / std::max({std::abs(a), std::abs(b),
                                                   1e-4}));
    }
    return worst;
  }));

  out.push_back(run_one("trajectory-derivative-fd", 1e-7, [&] {
    double worst = 0.0;
    for (const auto& [prep, p] : grid) {
      const BlochDerivative an = evolve_bloch_dT(prep, p);
      const BlochDerivative fd = fd_trajectory(prep, p);
      const double num = max_abs3(fd.dr1 - an.dr1, fd.dr2 - an.dr2,
                                  fd.dr3 - an.dr3);
      const double den =
          std::max(max_abs3(an.dr1, an.dr2, an.dr3), 1e-4);
      worst = std::max(worst, num / den);
    }
    return worst;
  }));

  out.push_back(run_one("heat-capacity-fd", 1e-7, [&] {
    double worst = 0.0;
    for (const auto& [prep, p] : grid) {
      const double an = heat_capacity(prep, p);
      const BlochDerivative fd = fd_trajectory(prep, p);
      worst = std::max(worst, std::abs(0.5 * fd.dr3 - an) /
                                  std::max(std::abs(an), 1e-4));
    }
    return worst;
  }));

  return out;
}

bool all_passed(const std::vector<SuiteResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const SuiteResult& r) { return r.passed; });
}

}  // namespace qtherm::verify
