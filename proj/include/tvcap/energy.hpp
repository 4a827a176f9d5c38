// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tvcap/extract.hpp"
#include "tvcap/quadrature.hpp"
#include "tvcap/trajectory.hpp"
#include "tvcap/twoport.hpp"

namespace tvcap {

/// Instantaneous supplied power as a pure function of one trajectory sample.
struct SupplyRate {
  std::function<double(const PortTrajectory&, std::size_t)> rate;

  double operator()(const PortTrajectory& traj, std::size_t i) const {
    return rate(traj, i);
  }

  /// s = V * I (one-port passivity supply).
  static SupplyRate electrical() {
    return {[](const PortTrajectory& traj, std::size_t i) {
      return traj.V[i] * traj.I[i];
    }};
  }

  /// s = V * I + F * U (two-port passivity supply).
  static SupplyRate both_ports() {
    return {[](const PortTrajectory& traj, std::size_t i) {
      if (!traj.has_mechanical_port())
        throw PreconditionError("both_ports supply rate needs a two-port trajectory");
      return traj.V[i] * traj.I[i] + traj.F[i] * traj.U[i];
    }};
  }
};

/// Candidate storage function S(Q, C), optionally declared nonnegative.
struct StorageCandidate {
  std::function<double(double, double)> value;  // (Q, C) -> joule
  bool nonnegative = true;

  /// The canonical storage S = Q^2 / (2C).
  static StorageCandidate quadratic() {
    return {[](double q, double c) { return stored_energy(q, c); }, true};
  }
};

struct DissipationCheck {
  bool holds = true;
  double worst_violation = 0.0;  // most negative slack beyond tolerance, as >= 0 [J]
  double time = 0.0;             // where the slack is worst
};

/// Evaluates S(x(t)) - S(x(0)) <= int_0^t s dt on every prefix of the
/// trajectory and reports the worst slack. The supplied-energy prefix sums
/// use the fourth-order cumulative rule, so discretization noise stays well
/// below the default tolerance for smooth runs.
inline DissipationCheck check_dissipation_inequality(const PortTrajectory& traj,
                                                     const StorageCandidate& storage,
                                                     const SupplyRate& supply,
                                                     double tolerance = 1e-6) {
  const std::size_t n = traj.size();
  if (n < 2) throw PreconditionError("dissipation check: trajectory too short");
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = supply(traj, i);
  const std::vector<double> supplied = cumulative_integral(s, traj.step);

  const double s0 = storage.value(traj.Q.front(), traj.C.front());
  double worst_slack = 0.0;
  double worst_time = traj.t.front();
  for (std::size_t i = 1; i < n; ++i) {
    const double slack =
        supplied[i] - (storage.value(traj.Q[i], traj.C[i]) - s0);
    if (slack < worst_slack) {
      worst_slack = slack;
      worst_time = traj.t[i];
    }
  }
  DissipationCheck result;
  result.holds = worst_slack >= -tolerance;
  result.worst_violation = result.holds ? 0.0 : -worst_slack;
  result.time = worst_time;
  return result;
}

/// Supplied electrical energy over a cycle [t1, t2] of the trajectory.
///
/// Preconditions: t1 and t2 lie on the grid and the endpoints are cyclic in
/// C and V (relative 1e-9). The integration-by-parts route
/// int Cdot V^2 / 2 dt is computed alongside and must agree; disagreement
/// means the cycle assumption broke down and raises an error.
inline double cycle_energy(const PortTrajectory& traj, double t1, double t2,
                           double* by_parts_value = nullptr) {
  const std::size_t i1 = traj.index_at(t1);
  const std::size_t i2 = traj.index_at(t2);
  if (i2 <= i1) throw PreconditionError("cycle_energy: t2 must exceed t1");

  const double rel = 1e-9;
  const double cap_scale = std::max({std::abs(traj.C[i1]), std::abs(traj.C[i2]), 1.0});
  if (std::abs(traj.C[i1] - traj.C[i2]) > rel * cap_scale)
    throw PreconditionError("cycle_energy: endpoints not cyclic, C(t1) != C(t2)");
  const double v_scale = std::max({std::abs(traj.V[i1]), std::abs(traj.V[i2]), 1.0});
  if (std::abs(traj.V[i1] - traj.V[i2]) > rel * v_scale)
    throw PreconditionError("cycle_energy: endpoints not cyclic, V(t1) != V(t2)");

  const std::size_t len = i2 - i1 + 1;
  std::vector<double> vi(len), half_cdot_v2(len);
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t g = i1 + i;
    vi[i] = traj.V[g] * traj.I[g];
    half_cdot_v2[i] = 0.5 * traj.Cdot[g] * traj.V[g] * traj.V[g];
  }
  const double direct = simpson_samples(vi, traj.step);
  const double by_parts = simpson_samples(half_cdot_v2, traj.step);
  if (std::abs(direct - by_parts) > 1e-6 * (1.0 + std::abs(direct)))
    throw Error("cycle_energy: integration-by-parts identity violated");
  if (by_parts_value != nullptr) *by_parts_value = by_parts;
  return direct;
}

enum class StorageVerdict { finite, growing };

/// Best-effort lower bounds on the available storage S_a: the supremum of
/// extractable energy is bounded from below by the best input found in the
/// restricted excitation family, never certified from above.
struct AvailableStorageEstimate {
  std::vector<int> horizons;         // cycle counts
  std::vector<double> lower_bounds;  // best extracted energy per horizon [J]
  StorageVerdict verdict = StorageVerdict::finite;
  double bound = 0.0;                // supremum estimate when finite [J]
  std::string note;
};

namespace detail {

inline StorageVerdict classify_growth(std::span<const double> bounds) {
  if (bounds.size() < 2) return StorageVerdict::finite;
  const double scale = std::max(1.0, std::abs(bounds.back()));
  const double first_step = bounds[1] - bounds[0];
  const double last_step = bounds[bounds.size() - 1] - bounds[bounds.size() - 2];
  // linear growth: increments stay at the same order instead of tapering off
  if (last_step > 1e-9 * scale && last_step > 0.5 * first_step)
    return StorageVerdict::growing;
  return StorageVerdict::finite;
}

}  // namespace detail

/// One-port estimate over Fourier-parameterized zero-mean currents: the
/// per-cycle optimum is synthesized once, replayed over the largest horizon,
/// and the extracted energy is read off at each cycle count.
inline AvailableStorageEstimate estimate_available_storage(
    const OnePortModel& model, double period, std::span<const int> horizons,
    int harmonic_order, double amplitude = 1.0, std::size_t grid = 4096) {
  if (horizons.empty())
    throw PreconditionError("available storage: need at least one horizon");
  if (model.initial_voltage != 0.0)
    throw PreconditionError("available storage: one-port estimate requires Q(0) = 0");

  AvailableStorageEstimate estimate;
  estimate.horizons.assign(horizons.begin(), horizons.end());
  estimate.note =
      "lower bound over truncated Fourier currents (order " +
      std::to_string(harmonic_order) + "); the supremum is not certified";

  const ExtractionProblem problem{model.capacitance, period, harmonic_order, 0.0, grid};
  const ExtractionResult synth = synthesize_extraction_current(problem, amplitude);
  if (synth.passive) {
    estimate.lower_bounds.assign(horizons.size(), 0.0);
    estimate.verdict = StorageVerdict::finite;
    estimate.bound = 0.0;
    return estimate;
  }

  const int max_cycles = *std::max_element(horizons.begin(), horizons.end());
  const double h = period / static_cast<double>(grid);
  const PortTrajectory traj = simulate_current_driven(
      model, synth.current, period * static_cast<double>(max_cycles), h);
  std::vector<double> supply(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) supply[i] = traj.V[i] * traj.I[i];
  const std::vector<double> supplied = cumulative_integral(supply, traj.step);

  double best = 0.0;
  for (int cycles : horizons) {
    const auto idx = static_cast<std::size_t>(cycles) * grid;
    if (idx >= supplied.size())
      throw PreconditionError("available storage: horizons must be positive cycle counts");
    best = std::max(best, -supplied[idx]);
    estimate.lower_bounds.push_back(best);
  }
  estimate.verdict = detail::classify_growth(estimate.lower_bounds);
  estimate.bound = estimate.verdict == StorageVerdict::finite
                       ? estimate.lower_bounds.back()
                       : std::numeric_limits<double>::infinity();
  return estimate;
}

/// Two-port estimate: losslessness plus nonnegative storage cap extraction
/// at S(x0). The bound is probed by discharging the capacitor over each
/// horizon with a constant current and frozen capacitance.
inline AvailableStorageEstimate estimate_available_storage(const TwoPortModel& model,
                                                           double cycle_duration,
                                                           std::span<const int> horizons,
                                                           std::size_t grid = 4096) {
  if (horizons.empty())
    throw PreconditionError("available storage: need at least one horizon");
  AvailableStorageEstimate estimate;
  estimate.horizons.assign(horizons.begin(), horizons.end());
  estimate.note = "two-port device is lossless with nonnegative storage; "
                  "extraction cannot exceed the stored energy";

  double best = 0.0;
  for (int cycles : horizons) {
    if (cycles < 1)
      throw PreconditionError("available storage: horizons must be positive cycle counts");
    const double duration = cycle_duration * static_cast<double>(cycles);
    const Waveform discharge =
        Waveform::constant(-model.initial_charge / duration);
    const PortTrajectory traj = simulate_two_port(
        model, discharge, Waveform::constant(0.0), duration,
        duration / static_cast<double>(grid));
    const EnergyReport report = energy_balance(traj);
    best = std::max(best, -(report.electrical + report.mechanical));
    estimate.lower_bounds.push_back(best);
  }
  estimate.verdict = StorageVerdict::finite;
  estimate.bound = stored_energy(model.initial_charge, model.initial_capacitance);
  return estimate;
}

}  // namespace tvcap
