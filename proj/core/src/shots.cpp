// SPDX-License-Identifier: Apache-2.0

#include "qtherm/shots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "qtherm/metrology.hpp"

namespace qtherm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// search window standing in for T in (0, inf)
constexpr double kTempLo = 1e-4;
constexpr double kTempHi = 1e4;
constexpr int kMonotoneSamples = 241;
constexpr double kRootTol = 1e-10;

double energy_at(double temp, const BlochState& prep, double gamma_tau) {
  return mean_energy(
      evolve_bloch(prep, GadParams(Temperature(temp), 1.0, gamma_tau)));
}

}  // namespace

ShotRecord sample_shots(const BlochState& evolved, std::uint64_t m,
                        std::uint64_t seed) {
  if (m == 0) {
    throw std::domain_error("sample_shots: need at least one measurement");
  }
  if (!is_valid(evolved)) {
    throw std::domain_error("sample_shots: invalid Bloch state");
  }
  const double p0 = std::clamp(0.5 * (1.0 + evolved.r3), 0.0, 1.0);
  std::mt19937_64 gen(seed);
  std::uint64_t n0 = 0;
  for (std::uint64_t i = 0; i < m; ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    n0 += u < p0 ? 1 : 0;
  }
  return ShotRecord{n0, m - n0, seed};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 step
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

EstimateRecord energy_estimate(const ShotRecord& s) {
  const double n0 = static_cast<double>(s.n0);
  const double n1 = static_cast<double>(s.n1);
  const double m = n0 + n1;
  if (m < 1.0) {
    throw std::domain_error("energy_estimate: empty shot record");
  }
  EstimateRecord rec;
  rec.energy_mean = (n0 - n1) / (2.0 * m);
  rec.energy_variance = n0 * n1 / (m * m * m);
  return rec;
}

EstimateRecord temperature_uncertainty(const ShotRecord& s,
                                       const BlochState& prep,
                                       const GadParams& p) {
  EstimateRecord rec = energy_estimate(s);
  const double c = heat_capacity(prep, p);
  rec.temp_uncertainty =
      c == 0.0 ? kInf : std::sqrt(rec.energy_variance) / std::abs(c);
  return rec;
}

EstimateRecord estimate_record(const ShotRecord& s, const BlochState& prep,
                               const GadParams& p) {
  EstimateRecord rec = temperature_uncertainty(s, prep, p);
  rec.temp_estimate =
      invert_temperature(rec.energy_mean, prep, p.gamma * p.tau);
  return rec;
}

TemperatureInversion invert_temperature(double e_obs, const BlochState& prep,
                                        double gamma_tau) {
  if (!std::isfinite(e_obs)) {
    throw std::domain_error("invert_temperature: observation must be finite");
  }
  if (!is_valid(prep) || !std::isfinite(gamma_tau) || gamma_tau < 0.0) {
    throw std::domain_error("invert_temperature: invalid configuration");
  }

  // sample the curve on a log grid and require one sign of slope throughout
  std::vector<double> temps(kMonotoneSamples), energies(kMonotoneSamples);
  const double step =
      std::log(kTempHi / kTempLo) / (kMonotoneSamples - 1);
  for (int i = 0; i < kMonotoneSamples; ++i) {
    temps[i] = kTempLo * std::exp(step * i);
    energies[i] = energy_at(temps[i], prep, gamma_tau);
  }
  bool rising = false, falling = false;
  for (int i = 1; i < kMonotoneSamples; ++i) {
    const double d = energies[i] - energies[i - 1];
    rising |= d > 0.0;
    falling |= d < 0.0;
  }
  if (rising == falling) {  // both directions seen, or completely flat
    return TemperatureInversion{TemperatureInversion::Status::NonMonotonic,
                                0.0};
  }

  const double e_front = energies.front();
  const double e_back = energies.back();
  if (e_obs < std::min(e_front, e_back) || e_obs > std::max(e_front, e_back)) {
    return TemperatureInversion{TemperatureInversion::Status::OutOfRange, 0.0};
  }

  // locate the bracketing grid cell, then bisect
  int cell = kMonotoneSamples - 2;
  for (int i = 1; i < kMonotoneSamples; ++i) {
    const double a = energies[i - 1], b = energies[i];
    if ((e_obs >= std::min(a, b)) && (e_obs <= std::max(a, b))) {
      cell = i - 1;
      break;
    }
  }
  double lo = temps[cell], hi = temps[cell + 1];
  double f_lo = energies[cell] - e_obs;
  while (hi - lo > kRootTol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = energy_at(mid, prep, gamma_tau) - e_obs;
    if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return TemperatureInversion{TemperatureInversion::Status::Ok,
                              0.5 * (lo + hi)};
}

}  // namespace qtherm
