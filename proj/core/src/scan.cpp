// SPDX-License-Identifier: Apache-2.0

#include "qtherm/scan.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "qtherm/shots.hpp"

namespace qtherm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGoldenTol = 1e-6;
constexpr double kRootTol = 1e-10;
constexpr double kDiagonalTol = 1e-12;

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? lo : lo + (hi - lo) * (double)i / (double)(n - 1);
  }
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (lo <= 0.0) throw std::domain_error("logspace: lo must be positive");
  std::vector<double> out(n);
  const double step = n == 1 ? 0.0 : std::log(hi / lo) / (double)(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(step * (double)i);
  return out;
}

double qfi_at(double theta0, Temperature t, double gamma_tau) {
  return qfi_closed_form(prepare_pure(theta0),
                         GadParams(t, 1.0, gamma_tau))
      .total;
}

// Golden-section maximum of f on [a, b] to the given width.
template <class F>
double golden_max(F&& f, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

void validate_grid(const ScanGrid& g) {
  if (g.theta0.empty() || g.gamma_tau.empty()) {
    throw std::domain_error("scan grid must be non-empty");
  }
  for (std::size_t i = 0; i < g.theta0.size(); ++i) {
    const double th = g.theta0[i];
    if (!std::isfinite(th) || th < 0.0 || th > kPi + 1e-12) {
      throw std::domain_error("scan grid: theta0 outside [0, pi]");
    }
    if (i && th < g.theta0[i - 1]) {
      throw std::domain_error("scan grid: theta0 must be sorted");
    }
  }
  for (std::size_t j = 0; j < g.gamma_tau.size(); ++j) {
    const double gt = g.gamma_tau[j];
    if (!std::isfinite(gt) || gt < 0.0) {
      throw std::domain_error("scan grid: gamma_tau must be non-negative");
    }
    if (j && gt < g.gamma_tau[j - 1]) {
      throw std::domain_error("scan grid: gamma_tau must be sorted");
    }
  }
}

}  // namespace

ScanGrid default_grid(Temperature t) {
  return ScanGrid{linspace(0.0, kPi, 181), logspace(0.01, 10.0, 400), t, 0.0};
}

ScanResult scan_qfi(const ScanGrid& g) {
  validate_grid(g);
  ScanResult res;
  res.n_theta = g.theta0.size();
  res.n_tau = g.gamma_tau.size();
  res.theta0 = g.theta0;
  res.gamma_tau = g.gamma_tau;
  res.cells.reserve(res.n_theta * res.n_tau);
  res.best_tau_per_theta.assign(res.n_theta, 0);
  res.best_theta_per_tau.assign(res.n_tau, 0);

  res.max_qfi = -1.0;
  for (std::size_t i = 0; i < res.n_theta; ++i) {
    const BlochState prep = prepare_pure(g.theta0[i], g.phi0);
    double row_best = -1.0;
    for (std::size_t j = 0; j < res.n_tau; ++j) {
      const GadParams p(g.temperature, 1.0, g.gamma_tau[j]);
      res.cells.push_back(metrology_report(prep, p));
      const double q = res.cells.back().qfi;
      if (q > row_best) {
        row_best = q;
        res.best_tau_per_theta[i] = j;
      }
      // ties break toward smaller gamma_tau, then smaller theta0; the scan
      // order makes strictly-greater the right comparison for theta but
      // gamma_tau needs the explicit rule
      bool better = q > res.max_qfi;
      if (q == res.max_qfi) {
        better = g.gamma_tau[j] < res.gamma_tau[res.argmax_tau] ||
                 (g.gamma_tau[j] == res.gamma_tau[res.argmax_tau] &&
                  g.theta0[i] < res.theta0[res.argmax_theta]);
      }
      if (better) {
        res.max_qfi = q;
        res.argmax_theta = i;
        res.argmax_tau = j;
      }
    }
  }
  for (std::size_t j = 0; j < res.n_tau; ++j) {
    double col_best = -1.0;
    for (std::size_t i = 0; i < res.n_theta; ++i) {
      if (res.at(i, j).qfi > col_best) {
        col_best = res.at(i, j).qfi;
        res.best_theta_per_tau[j] = i;
      }
    }
  }
  return res;
}

OptimalTime optimal_time(const BlochState& prep, Temperature t, double lo,
                         double hi) {
  if (!(lo >= 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw std::domain_error("optimal_time: invalid bracket");
  }
  const std::size_t n = 512;
  const auto grid = linspace(lo, hi, n);
  const auto f = [&](double gt) {
    return qfi_closed_form(prep, GadParams(t, 1.0, gt)).total;
  };
  std::size_t best = 0;
  double best_q = f(grid[0]);
  for (std::size_t j = 1; j < n; ++j) {
    const double q = f(grid[j]);
    if (q > best_q) {
      best_q = q;
      best = j;
    }
  }
  if (best == 0 || best == n - 1) {
    return OptimalTime{grid[best], best_q, false};
  }
  const double refined = golden_max(f, grid[best - 1], grid[best + 1],
                                    kGoldenTol);
  const double refined_q = f(refined);
  if (refined_q >= best_q) {
    return OptimalTime{refined, refined_q, true};
  }
  return OptimalTime{grid[best], best_q, true};
}

OptimalPreparation optimal_preparation(Temperature t,
                                       std::optional<double> gamma_tau) {
  OptimalPreparation res;
  if (gamma_tau) {
    const double gt = *gamma_tau;
    const auto f = [&](double th) { return qfi_at(th, t, gt); };
    const std::size_t n = 181;
    const auto grid = linspace(0.0, kPi, n);
    std::size_t best = 0;
    double best_q = f(grid[0]);
    for (std::size_t i = 1; i < n; ++i) {
      const double q = f(grid[i]);
      if (q > best_q) {
        best_q = q;
        best = i;
      }
    }
    res.gamma_tau = gt;
    res.tau_interior = false;
    if (best == 0 || best == n - 1) {
      res.theta0 = grid[best];
      res.qfi = best_q;
      res.theta_interior = false;
      return res;
    }
    const double th = golden_max(f, grid[best - 1], grid[best + 1],
                                 kGoldenTol);
    const double th_q = f(th);
    if (th_q >= best_q) {
      res.theta0 = th;
      res.qfi = th_q;
    } else {
      res.theta0 = grid[best];
      res.qfi = best_q;
    }
    res.theta_interior = true;
    return res;
  }

  // free time: best time per angle, then argmax over the angle
  constexpr double kTimeLo = 0.01, kTimeHi = 10.0;
  const std::size_t n = 121;
  const auto grid = linspace(0.0, kPi, n);
  std::size_t best = 0;
  OptimalTime best_time{};
  double best_q = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const OptimalTime ot =
        optimal_time(prepare_pure(grid[i]), t, kTimeLo, kTimeHi);
    if (ot.qfi > best_q) {
      best_q = ot.qfi;
      best = i;
      best_time = ot;
    }
  }
  res.theta0 = grid[best];
  res.theta_interior = false;
  if (best != 0 && best != n - 1) {
    const auto f = [&](double th) {
      return optimal_time(prepare_pure(th), t, kTimeLo, kTimeHi).qfi;
    };
    const double th = golden_max(f, grid[best - 1], grid[best + 1], 1e-4);
    const OptimalTime refined =
        optimal_time(prepare_pure(th), t, kTimeLo, kTimeHi);
    if (refined.qfi >= best_q) {
      res.theta0 = th;
      best_time = refined;
    }
    res.theta_interior = true;
  }
  res.gamma_tau = best_time.gamma_tau;
  res.qfi = best_time.qfi;
  res.tau_interior = best_time.interior;
  return res;
}

std::optional<double> find_qfi_zero(const BlochState& prep, Temperature t) {
  if (std::abs(prep.r1) > kDiagonalTol || std::abs(prep.r2) > kDiagonalTol) {
    throw std::domain_error("find_qfi_zero: requires a diagonal preparation");
  }
  const auto slope = [&](double gt) {
    return evolve_bloch_dT(prep, GadParams(t, 1.0, gt)).dr3;
  };
  const auto grid = logspace(1e-4, 50.0, 1200);
  double prev = slope(grid[0]);
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double cur = slope(grid[j]);
    if (prev == 0.0) return grid[j - 1];
    if ((prev < 0.0) != (cur < 0.0)) {
      double lo = grid[j - 1], hi = grid[j];
      double f_lo = prev;
      while (hi - lo > kRootTol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = slope(mid);
        if ((f_lo < 0.0) == (f_mid < 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev = cur;
  }
  return std::nullopt;
}

Table figure_curves(FigureKind which, const FigureParams& params) {
  const Temperature temp = params.temperature;
  const auto taus = logspace(params.tau_min, params.tau_max, params.tau_steps);

  if (which == FigureKind::BoundComparison) {
    Table tab;
    tab.columns = {"theta0", "tau", "Q", "F_energy", "ratio"};
    for (const double th : {0.0, kPi / 4.0, kPi / 2.0, kPi}) {
      const BlochState prep = prepare_pure(th);
      for (const double gt : taus) {
        const GadParams p(temp, params.gamma, gt / params.gamma);
        const MetrologyReport rep = metrology_report(prep, p);
        const double ratio = rep.bound_ratio
                                 ? *rep.bound_ratio
                                 : std::numeric_limits<double>::quiet_NaN();
        tab.add_row({th, gt, rep.qfi, rep.classical_fisher, ratio},
                    rep.saturated ? "saturated" : "-");
      }
    }
    return tab;
  }

  if (which == FigureKind::UncertaintyVsBounds) {
    Table tab;
    tab.columns = {"theta0", "tau",        "crb",
                   "qcrb",   "deltaT_sim", "deltaT_se"};
    std::size_t point = 0;
    for (const double th : {kPi, kPi / 2.0, 0.0}) {
      const BlochState prep = prepare_pure(th);
      for (const double gt : taus) {
        const GadParams p(temp, params.gamma, gt / params.gamma);
        const BlochState evolved = evolve_bloch(prep, p);
        const double crb = crb_energy(prep, p, params.shots);
        const double qb = qcrb(prep, p, params.shots);
        double sum = 0.0, sum2 = 0.0;
        bool diverged = false;
        for (std::uint64_t r = 0; r < params.repetitions; ++r) {
          const ShotRecord s = sample_shots(
              evolved, params.shots,
              derive_seed(params.seed, point * params.repetitions + r));
          const EstimateRecord est = temperature_uncertainty(s, prep, p);
          if (!std::isfinite(est.temp_uncertainty)) {
            diverged = true;
            break;
          }
          sum += est.temp_uncertainty;
          sum2 += est.temp_uncertainty * est.temp_uncertainty;
        }
        const double reps = (double)params.repetitions;
        const double mean =
            diverged ? std::numeric_limits<double>::infinity() : sum / reps;
        const double se =
            diverged || reps < 2.0
                ? 0.0
                : std::sqrt(std::max(0.0, (sum2 / reps - mean * mean) /
                                              (reps - 1.0)));
        std::string flag = "-";
        if (!std::isfinite(qb)) flag = "qcrb-inf";
        if (diverged) flag = flag == "-" ? "deltaT-inf" : flag + ";deltaT-inf";
        tab.add_row({th, gt, crb, qb, mean, se}, flag);
        ++point;
      }
    }
    return tab;
  }

  // QfiLandscape
  Table tab;
  tab.columns = {"theta0", "tau", "Q", "ratio"};
  const auto thetas = linspace(0.0, kPi, params.theta_steps);
  ScanGrid grid{thetas, taus, temp, 0.0};
  const ScanResult scan = scan_qfi(grid);
  for (std::size_t i = 0; i < scan.n_theta; ++i) {
    for (std::size_t j = 0; j < scan.n_tau; ++j) {
      const MetrologyReport& rep = scan.at(i, j);
      const double ratio = rep.bound_ratio
                               ? *rep.bound_ratio
                               : std::numeric_limits<double>::quiet_NaN();
      const bool is_argmax = i == scan.argmax_theta && j == scan.argmax_tau;
      tab.add_row({thetas[i], taus[j], rep.qfi, ratio},
                  is_argmax ? "argmax" : "-");
    }
  }
  // slice at gamma_tau = 0.6, where the optimal preparation moves off the
  // poles
  for (const double th : thetas) {
    const GadParams p(temp, 1.0, 0.6);
    const MetrologyReport rep = metrology_report(prepare_pure(th), p);
    const double ratio = rep.bound_ratio
                             ? *rep.bound_ratio
                             : std::numeric_limits<double>::quiet_NaN();
    tab.add_row({th, 0.6, rep.qfi, ratio}, "slice");
  }
  if (const auto root = find_qfi_zero(prepare_pure(0.0), temp)) {
    const GadParams p(temp, 1.0, *root);
    const MetrologyReport rep = metrology_report(prepare_pure(0.0), p);
    tab.add_row({0.0, *root, rep.qfi,
                 std::numeric_limits<double>::quiet_NaN()},
                "qfi-zero");
  }
  return tab;
}

}  // namespace qtherm
