// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "tvcap/errors.hpp"
#include "tvcap/waveform.hpp"

namespace tvcap {

/// Positive capacitance C(t) [F] together with its exact rate of change
/// Cdot(t) [F/s]. For closed-form waveforms the rate is the analytic
/// derivative; a sampled profile must supply its rate explicitly.
class CapacitanceProfile {
public:
  explicit CapacitanceProfile(Waveform value)
      : value_(std::move(value)), rate_(value_.derivative()) {}

  CapacitanceProfile(Waveform value, Waveform rate)
      : value_(std::move(value)), rate_(std::move(rate)) {}

  static CapacitanceProfile constant(double c0) {
    return CapacitanceProfile(Waveform::constant(c0));
  }

  /// C(t) = c0 + slope * t
  static CapacitanceProfile ramp(double c0, double slope) {
    return CapacitanceProfile(Waveform::polynomial({c0, slope}));
  }

  /// C(t) = offset + amplitude * sin(omega t)
  static CapacitanceProfile sinusoidal(double offset, double amplitude, double omega) {
    return CapacitanceProfile(Waveform::fourier(omega, offset, {}, {amplitude}));
  }

  static CapacitanceProfile piecewise(std::vector<std::pair<double, double>> points) {
    return CapacitanceProfile(Waveform::piecewise_linear(std::move(points)));
  }

  double value(double t) const { return value_(t); }
  double rate(double t) const { return rate_(t); }

  const Waveform& waveform() const noexcept { return value_; }
  const Waveform& rate_waveform() const noexcept { return rate_; }

  /// Dense-sampling positivity check over [t0, t1]; throws ModelError at the
  /// first nonpositive sample. Sampling cannot certify positivity between
  /// grid points; the check matches the integrator resolution it is given.
  void require_positive(double t0, double t1, double step) const {
    if (!(step > 0.0)) throw PreconditionError("require_positive: step must be > 0");
    const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / step - 1e-9));
    for (std::size_t i = 0; i <= n; ++i) {
      const double t = i == n ? t1 : t0 + static_cast<double>(i) * step;
      if (!(value_(t) > 0.0))
        throw ModelError("nonpositive capacitance at t = " + std::to_string(t), t);
    }
  }

private:
  Waveform value_;
  Waveform rate_;
};

}  // namespace tvcap
