// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tvcap/capacitance.hpp"
#include "tvcap/waveform.hpp"

namespace tvcap {

/// Classical current-driven capacitor with a prescribed capacitance profile.
/// The integrated state is the charge Q; the voltage is the output map Q/C.
struct OnePortModel {
  CapacitanceProfile capacitance;
  double initial_voltage = 0.0;  // V(0) [V]

  double initial_charge() const { return capacitance.value(0.0) * initial_voltage; }
};

/// Lossless two-port capacitor: states (Q, C), inputs (I, U), outputs
/// V = Q/C and F = -Q^2/(2 C^2).
struct TwoPortModel {
  double initial_charge = 0.0;       // Q0 [C]
  double initial_capacitance = 1.0;  // C0 [F]
};

/// Capacitor whose plate angle carries inertia: C = C(Theta), P = J * dTheta/dt.
struct MechanicalCapModel {
  double inertia = 1.0;            // J [kg m^2]
  Waveform capacitance_of_angle;   // C(Theta) [F], evaluated in the angle variable
  double initial_charge = 0.0;     // Q0 [C]
  double initial_angle = 0.0;      // Theta0 [rad]
  double initial_momentum = 0.0;   // P0 [kg m^2 / s]
};

/// Time-varying inductor, handled by symbol renaming over the capacitor core:
/// flux plays charge, inductance plays capacitance, current plays voltage and
/// the applied voltage plays the driving current.
struct InductorModel {
  CapacitanceProfile inductance;  // L(t) [H] with exact Ldot(t)
  double initial_current = 0.0;   // I(0) [A]

  double initial_flux() const { return inductance.value(0.0) * initial_current; }
};

}  // namespace tvcap
