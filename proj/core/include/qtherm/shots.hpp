// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo simulation of the M-shot energy measurement and the
// count-rate estimators built from it.

#pragma once

#include <cstdint>

#include "qtherm/model.hpp"

namespace qtherm {

/// Simulated measurement counts from m repetitions of the energy
/// measurement: n0 excited outcomes, n1 ground outcomes, n0 + n1 = m.
struct ShotRecord {
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
  std::uint64_t seed = 0;
};

/// Outcome of inverting the mean-energy curve E_T(tau) for T.
struct TemperatureInversion {
  enum class Status { NotComputed, Ok, OutOfRange, NonMonotonic };
  Status status = Status::NotComputed;
  double value = 0.0;  // meaningful only when status == Ok
};

/// Count-rate estimators evaluated on a ShotRecord:
///   <E>   = (n0 - n1) / (2 (n0 + n1))
///   varE  = n0 n1 / (n0 + n1)^3
///   dT    = sqrt(varE) / |C_T|   (+inf when C_T = 0)
struct EstimateRecord {
  double energy_mean = 0.0;
  double energy_variance = 0.0;
  double temp_uncertainty = 0.0;
  TemperatureInversion temp_estimate;
};

/// Draws n0 binomially with success probability p0 = (1 + r3)/2.
/// Sampling is a Bernoulli sum over a std::mt19937_64 stream seeded with the
/// 64-bit seed, with 53-bit mantissa uniforms, so records are bit
/// reproducible. m = 0 is a domain error.
ShotRecord sample_shots(const BlochState& evolved, std::uint64_t m,
                        std::uint64_t seed);

/// Derives a per-batch seed from a base seed and a batch index (splitmix64),
/// so repetition batches can run in any order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Energy fields only.
EstimateRecord energy_estimate(const ShotRecord& s);

/// Energy fields plus the temperature uncertainty, using the model
/// derivative at the true parameters (as when overlaying simulated points on
/// theory curves). Leaves the temperature estimate not computed.
EstimateRecord temperature_uncertainty(const ShotRecord& s,
                                       const BlochState& prep,
                                       const GadParams& p);

/// Full record: also inverts the measured mean energy for T.
EstimateRecord estimate_record(const ShotRecord& s, const BlochState& prep,
                               const GadParams& p);

/// Bracketing root solve of mean_energy(evolve_bloch(prep, tau)) = e_obs
/// over T, to 1e-10 in T. Monotonicity of the curve is checked on a log grid
/// first; non-monotonic configurations (possible for the excited preparation
/// near the QFI zero) and out-of-range observations return failure tags.
TemperatureInversion invert_temperature(double e_obs, const BlochState& prep,
                                        double gamma_tau);

}  // namespace qtherm
