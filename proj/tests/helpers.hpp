// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>
#include <random>
#include <vector>

#include "tvcap/tvcap.hpp"

namespace tvcap::testing {

inline constexpr double kPeriod = 4.0 * std::numbers::pi;   // one C(t) cycle [s]
inline constexpr double kStep = kPeriod / 4096.0;

// Reference cycle energy of the six-term profile on C(t) = 2 + sin(t/2),
// frozen from two independent quadratures (closed-form charge + adaptive ODE
// integration) at 1e-8 agreement.
inline constexpr double kHarvestCycleEnergy = -8.857699156;

inline OnePortModel harvesting_model() {
  return OnePortModel{harvesting_capacitance(), 0.0};
}

inline PortTrajectory harvesting_run(int cycles = 1, double dt = kStep) {
  return simulate_current_driven(harvesting_model(), harvesting_profile(),
                                 kPeriod * cycles, dt);
}

/// Random strictly positive fourier capacitance profile on the base period.
inline CapacitanceProfile random_capacitance(std::mt19937& rng) {
  std::uniform_real_distribution<double> coeff(-0.5, 0.5);
  std::vector<double> cosine(3), sine(3);
  double swing = 0.0;
  for (int k = 0; k < 3; ++k) {
    cosine[k] = coeff(rng);
    sine[k] = coeff(rng);
    swing += std::abs(cosine[k]) + std::abs(sine[k]);
  }
  return CapacitanceProfile(Waveform::fourier(0.5, swing + 1.0, cosine, sine));
}

/// Random zero-mean fourier current on the same base frequency.
inline Waveform random_current(std::mt19937& rng) {
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::vector<double> cosine(4), sine(4);
  for (int k = 0; k < 4; ++k) {
    cosine[k] = coeff(rng);
    sine[k] = coeff(rng);
  }
  return Waveform::fourier(0.5, 0.0, cosine, sine);
}

}  // namespace tvcap::testing
