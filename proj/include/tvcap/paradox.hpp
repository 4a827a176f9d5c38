// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>

#include "tvcap/twoport.hpp"

namespace tvcap {

/// Charge-conserving capacitance ramp: an isolated capacitor holding charge Q
/// whose capacitance is driven linearly from C0 to k*C0 over a duration T.
struct ParadoxScenario {
  double charge = 1.0;            // Q [C], conserved (I = 0 throughout)
  double base_capacitance = 1.0;  // C0 [F]
  double ramp_duration = 1.0;     // T [s]
  double factor = 2.0;            // k, end capacitance k*C0
};

struct ParadoxResult {
  double stored_before = 0.0;    // Q^2/(2 C0) [J]
  double stored_after = 0.0;     // Q^2/(2 k C0) [J]
  double mechanical_work = 0.0;  // int F U dt over the ramp [J]
  double residual = 0.0;         // |W_mech - (S_after - S_before)| [J]
};

/// The ramp-duration-independent limit of the mechanical work:
/// -Q^2 (1 - 1/k) / (2 C0). Covers the impulsive (T -> 0) modulation, which
/// the fixed-step simulator cannot represent.
inline double closed_form_limit(const ParadoxScenario& s) {
  if (!(s.base_capacitance > 0.0))
    throw PreconditionError("paradox: C0 must be > 0");
  if (!(s.factor > 0.0)) throw PreconditionError("paradox: factor must be > 0");
  return -s.charge * s.charge * (1.0 - 1.0 / s.factor) / (2.0 * s.base_capacitance);
}

/// Simulates the ramp through the two-port model (I = 0, U = (k-1) C0 / T)
/// and accounts for the stored-energy drop through the mechanical port.
inline ParadoxResult run_paradox(const ParadoxScenario& s, std::size_t steps = 4096) {
  if (!(s.ramp_duration > 0.0))
    throw PreconditionError("paradox: T must be > 0; use closed_form_limit for the impulse");
  if (!(s.base_capacitance > 0.0))
    throw PreconditionError("paradox: C0 must be > 0");
  if (!(s.factor > 0.0)) throw PreconditionError("paradox: factor must be > 0");

  const TwoPortModel model{s.charge, s.base_capacitance};
  const Waveform modulation =
      Waveform::constant((s.factor - 1.0) * s.base_capacitance / s.ramp_duration);
  const PortTrajectory traj =
      simulate_two_port(model, Waveform::constant(0.0), modulation, s.ramp_duration,
                        s.ramp_duration / static_cast<double>(steps));
  const EnergyReport report = energy_balance(traj);

  ParadoxResult result;
  result.stored_before = stored_energy(s.charge, s.base_capacitance);
  result.stored_after = stored_energy(s.charge, s.factor * s.base_capacitance);
  result.mechanical_work = report.mechanical;
  result.residual =
      std::abs(result.mechanical_work - (result.stored_after - result.stored_before));
  return result;
}

}  // namespace tvcap
