// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "tvcap/models.hpp"
#include "tvcap/oneport.hpp"
#include "tvcap/quadrature.hpp"
#include "tvcap/trajectory.hpp"

namespace tvcap {

/// Stored energy of the capacitor state.
inline double stored_energy(double charge, double capacitance) {
  return 0.5 * charge * charge / capacitance;
}

/// Supplied-energy bookkeeping of one run. For one-port trajectories the
/// mechanical column is the deficit -integral(Cdot V^2 / 2), i.e. the power
/// the missing port would have to provide.
struct EnergyReport {
  double electrical = 0.0;    // integral of V*I [J]
  double mechanical = 0.0;    // integral of F*U [J] (or the one-port deficit)
  double storage_delta = 0.0; // S(end) - S(start) [J]
  double residual = 0.0;      // electrical + mechanical - storage_delta [J]
  std::vector<double> per_cycle;  // supplied energy per full cycle, when requested
};

/// RK4 on the state (Q, C) with inputs I and U; outputs V = Q/C and
/// F = -Q^2/(2C^2) per sample. Throws ModelError with the first grid time at
/// which U has driven the capacitance nonpositive.
inline PortTrajectory simulate_two_port(const TwoPortModel& model, const Waveform& current,
                                        const Waveform& modulation, double t_end,
                                        double dt) {
  if (!(model.initial_capacitance > 0.0))
    throw PreconditionError("simulate_two_port: C0 must be > 0");
  const auto [steps, h] = detail::make_grid(t_end, dt);

  PortTrajectory traj;
  traj.step = h;
  const std::size_t count = steps + 1;
  for (auto* col : {&traj.t, &traj.Q, &traj.C, &traj.V, &traj.I, &traj.Cdot, &traj.F,
                    &traj.U})
    col->reserve(count);

  std::array<double, 2> state{model.initial_charge, model.initial_capacitance};
  auto deriv = [&](double t, const std::array<double, 2>&) {
    return std::array<double, 2>{current(t), modulation(t)};
  };
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = i == steps ? t_end : static_cast<double>(i) * h;
    const double q = state[0];
    const double c = state[1];
    if (!(c > 0.0))
      throw ModelError("capacitance driven nonpositive at t = " + std::to_string(t), t);
    traj.t.push_back(t);
    traj.Q.push_back(q);
    traj.C.push_back(c);
    traj.V.push_back(q / c);
    traj.I.push_back(current(t));
    traj.Cdot.push_back(modulation(t));
    traj.F.push_back(-0.5 * q * q / (c * c));
    traj.U.push_back(modulation(t));
    if (i < steps) state = detail::rk4_step(state, t, h, deriv);
  }
  return traj;
}

/// Energy accounting along a trajectory: E_elec = int V I dt,
/// E_mech = int F U dt (two-port) or -int Cdot V^2 / 2 dt (one-port deficit),
/// storage delta of S = Q^2/(2C), and the balance residual.
/// If cycle_period > 0, supplied energy is also reported per full cycle.
inline EnergyReport energy_balance(const PortTrajectory& traj, double cycle_period = 0.0) {
  const std::size_t n = traj.size();
  if (n < 2) throw PreconditionError("energy_balance: trajectory too short");

  std::vector<double> elec(n), mech(n);
  for (std::size_t i = 0; i < n; ++i) {
    elec[i] = traj.V[i] * traj.I[i];
    mech[i] = traj.has_mechanical_port()
                  ? traj.F[i] * traj.U[i]
                  : -0.5 * traj.Cdot[i] * traj.V[i] * traj.V[i];
  }

  EnergyReport report;
  report.electrical = simpson_samples(elec, traj.step);
  report.mechanical = simpson_samples(mech, traj.step);
  report.storage_delta = stored_energy(traj.Q.back(), traj.C.back()) -
                         stored_energy(traj.Q.front(), traj.C.front());
  report.residual = report.electrical + report.mechanical - report.storage_delta;

  if (cycle_period > 0.0) {
    const auto per_cycle = static_cast<std::size_t>(std::llround(cycle_period / traj.step));
    if (per_cycle == 0) throw PreconditionError("energy_balance: cycle shorter than step");
    for (std::size_t begin = 0; begin + per_cycle < n; begin += per_cycle) {
      const std::size_t len = per_cycle + 1;
      double e = simpson_samples(std::span(elec).subspan(begin, len), traj.step);
      if (traj.has_mechanical_port())
        e += simpson_samples(std::span(mech).subspan(begin, len), traj.step);
      report.per_cycle.push_back(e);
    }
  }
  return report;
}

/// Angle-modulated capacitor: dQ/dt = I, dTheta/dt = P/J,
/// dP/dt = tau + Q^2 C'(Theta) / (2 C(Theta)^2). The torque term is the
/// negated gradient of the stored electrical energy in Theta, so the total
/// energy Q^2/(2C(Theta)) + P^2/(2J) obeys dH/dt = V I + (P/J) tau.
inline MechanicalTrajectory simulate_state_modulated(const MechanicalCapModel& model,
                                                     const Waveform& current,
                                                     const Waveform& torque, double t_end,
                                                     double dt) {
  if (!(model.inertia > 0.0))
    throw PreconditionError("simulate_state_modulated: inertia must be > 0");
  const auto [steps, h] = detail::make_grid(t_end, dt);
  const Waveform cap_slope = model.capacitance_of_angle.derivative();

  MechanicalTrajectory traj;
  traj.step = h;
  const std::size_t count = steps + 1;
  for (auto* col : {&traj.t, &traj.Q, &traj.C, &traj.V, &traj.I, &traj.Theta, &traj.P,
                    &traj.torque})
    col->reserve(count);

  std::array<double, 3> state{model.initial_charge, model.initial_angle,
                              model.initial_momentum};
  auto deriv = [&](double t, const std::array<double, 3>& y) {
    const double c = model.capacitance_of_angle(y[1]);
    const double electrostatic = 0.5 * y[0] * y[0] * cap_slope(y[1]) / (c * c);
    return std::array<double, 3>{current(t), y[2] / model.inertia,
                                 torque(t) + electrostatic};
  };
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = i == steps ? t_end : static_cast<double>(i) * h;
    const double c = model.capacitance_of_angle(state[1]);
    if (!(c > 0.0))
      throw ModelError("capacitance nonpositive at t = " + std::to_string(t), t);
    traj.t.push_back(t);
    traj.Q.push_back(state[0]);
    traj.C.push_back(c);
    traj.V.push_back(state[0] / c);
    traj.I.push_back(current(t));
    traj.Theta.push_back(state[1]);
    traj.P.push_back(state[2]);
    traj.torque.push_back(torque(t));
    if (i < steps) state = detail::rk4_step(state, t, h, deriv);
  }
  return traj;
}

/// Total energy of the mechanical model at sample i.
inline double mechanical_energy(const MechanicalCapModel& model,
                                const MechanicalTrajectory& traj, std::size_t i) {
  return stored_energy(traj.Q[i], traj.C[i]) +
         0.5 * traj.P[i] * traj.P[i] / model.inertia;
}

// --- time-varying inductor dual ------------------------------------------
//
// V = L dI/dt + Ldot I is the same law as the capacitor one-port under
// (Q, C, V, I) -> (Phi, L, I, V), so the simulators are reused as-is and the
// trajectory columns are read under the renaming.

inline PortTrajectory simulate_voltage_driven(const InductorModel& model,
                                              const Waveform& voltage, double t_end,
                                              double dt) {
  const OnePortModel renamed{model.inductance, model.initial_current};
  return simulate_current_driven(renamed, voltage, t_end, dt);
}

inline double solve_current_ode(const InductorModel& model, const Waveform& voltage,
                                double t, std::size_t quad_intervals = 4096) {
  const OnePortModel renamed{model.inductance, model.initial_current};
  return solve_voltage_ode(renamed, voltage, t, quad_intervals);
}

inline Waveform voltage_from_current(const InductorModel& model, const Waveform& current) {
  const OnePortModel renamed{model.inductance, model.initial_current};
  return current_from_voltage(renamed, current);
}

}  // namespace tvcap
