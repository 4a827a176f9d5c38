// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>

#include "tvcap/models.hpp"
#include "tvcap/quadrature.hpp"
#include "tvcap/trajectory.hpp"

namespace tvcap {

/// Integrates dQ/dt = I(t) by fixed-step RK4 and maps V = Q/C per sample.
/// The profile is positivity-checked at a quarter of the grid spacing.
inline PortTrajectory simulate_current_driven(const OnePortModel& model,
                                              const Waveform& current, double t_end,
                                              double dt) {
  const auto [steps, h] = detail::make_grid(t_end, dt);
  model.capacitance.require_positive(0.0, t_end, h / 4.0);

  PortTrajectory traj;
  traj.step = h;
  const std::size_t count = steps + 1;
  traj.t.reserve(count);
  traj.Q.reserve(count);
  traj.C.reserve(count);
  traj.V.reserve(count);
  traj.I.reserve(count);
  traj.Cdot.reserve(count);

  std::array<double, 1> state{model.initial_charge()};
  auto deriv = [&current](double t, const std::array<double, 1>&) {
    return std::array<double, 1>{current(t)};
  };
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = i == steps ? t_end : static_cast<double>(i) * h;
    const double c = model.capacitance.value(t);
    traj.t.push_back(t);
    traj.Q.push_back(state[0]);
    traj.C.push_back(c);
    traj.V.push_back(state[0] / c);
    traj.I.push_back(current(t));
    traj.Cdot.push_back(model.capacitance.rate(t));
    if (i < steps) state = detail::rk4_step(state, t, h, deriv);
  }
  return traj;
}

/// Voltage at time t via the integrating-factor solution of
/// dV/dt + (Cdot/C) V = I/C with alpha = ln C: the homogeneous part decays
/// as C(0)/C(t), the particular part is a quadrature of e^{alpha} I/C.
/// Independent of the RK4 path; used to cross-check it.
inline double solve_voltage_ode(const OnePortModel& model, const Waveform& current,
                                double t, std::size_t quad_intervals = 4096) {
  if (t < 0.0) throw PreconditionError("solve_voltage_ode: t must be >= 0");
  model.capacitance.require_positive(0.0, t, t > 0.0 ? t / 4096.0 : 1.0);
  const double c0 = model.capacitance.value(0.0);
  const double ct = model.capacitance.value(t);
  const double alpha_t = std::log(ct);
  double particular = 0.0;
  if (t > 0.0) {
    particular = simpson(
        [&](double tau) {
          const double c = model.capacitance.value(tau);
          return std::exp(std::log(c) - alpha_t) * (current(tau) / c);
        },
        0.0, t, quad_intervals);
  }
  const double homogeneous = model.initial_voltage * (c0 / ct);
  return particular + homogeneous;
}

/// I = C * dV/dt + Cdot * V, exact in closed form. This direction treats the
/// voltage as prescribed; it is an analytical construction, not a realizable drive
/// (an applied voltage step would demand an impulsive current).
inline Waveform current_from_voltage(const OnePortModel& model, const Waveform& voltage) {
  if (voltage.as<Sampled>())
    throw UnsupportedOperation(
        "current_from_voltage: sampled voltage needs an explicit finite-difference grid");
  return model.capacitance.waveform() * voltage.derivative() +
         model.capacitance.rate_waveform() * voltage;
}

/// Pointwise-sampled variant for combinations with no closed-form product.
inline Waveform current_from_voltage(const OnePortModel& model, const Waveform& voltage,
                                     double t0, double t_end, double dt) {
  const auto [steps, h] = detail::make_grid(t_end - t0, dt);
  const Waveform dv = voltage.derivative();
  std::vector<double> samples(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    samples[i] = model.capacitance.value(t) * dv(t) + model.capacitance.rate(t) * voltage(t);
  }
  return Waveform::sampled(t0, h, std::move(samples));
}

/// Current change under the reference shift V -> V + psi. Equals Cdot * psi,
/// so the one-port law singles out an absolute potential unless C is constant.
inline Waveform gauge_residual(const OnePortModel& model, const Waveform& voltage,
                               double psi) {
  return current_from_voltage(model, voltage.shifted(psi)) -
         current_from_voltage(model, voltage);
}

}  // namespace tvcap
