// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <vector>

#include "tvcap/errors.hpp"

namespace tvcap {

inline void write_csv_value(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

/// Time-aligned samples of one simulation run on a uniform grid.
/// F and U are populated for two-port runs only. Cdot holds the capacitance
/// rate along the trajectory (the profile derivative for one-port runs, the
/// input U for two-port runs); it backs the energy integrals and is not part
/// of the CSV contract.
struct PortTrajectory {
  double step = 0.0;
  std::vector<double> t, Q, C, V, I, Cdot;
  std::vector<double> F, U;

  std::size_t size() const noexcept { return t.size(); }
  bool has_mechanical_port() const noexcept { return !F.empty(); }

  /// Grid index of a given time; the time must lie on the grid.
  std::size_t index_at(double time) const {
    if (t.empty()) throw PreconditionError("index_at: empty trajectory");
    const double x = (time - t.front()) / step;
    const auto i = static_cast<std::ptrdiff_t>(std::llround(x));
    if (i < 0 || i >= static_cast<std::ptrdiff_t>(t.size()) ||
        std::abs(x - static_cast<double>(i)) > 1e-6)
      throw PreconditionError("index_at: time is not a grid point");
    return static_cast<std::size_t>(i);
  }

  /// CSV header `t,Q,C,V,I` (plus `,F,U` for two-port runs), one row per
  /// grid point, full double precision.
  void write_csv(std::ostream& os) const {
    os << (has_mechanical_port() ? "t,Q,C,V,I,F,U\n" : "t,Q,C,V,I\n");
    for (std::size_t i = 0; i < size(); ++i) {
      write_csv_value(os, t[i]);
      for (const auto* col : {&Q, &C, &V, &I}) {
        os << ',';
        write_csv_value(os, (*col)[i]);
      }
      if (has_mechanical_port()) {
        os << ',';
        write_csv_value(os, F[i]);
        os << ',';
        write_csv_value(os, U[i]);
      }
      os << '\n';
    }
  }
};

/// Trajectory of the angle-modulated capacitor: electrical charge plus the
/// rotor state (Theta, P) and the applied torque.
struct MechanicalTrajectory {
  double step = 0.0;
  std::vector<double> t, Q, C, V, I, Theta, P, torque;

  std::size_t size() const noexcept { return t.size(); }

  void write_csv(std::ostream& os) const {
    os << "t,Q,C,V,I,Theta,P,tau\n";
    for (std::size_t i = 0; i < size(); ++i) {
      write_csv_value(os, t[i]);
      for (const auto* col : {&Q, &C, &V, &I, &Theta, &P, &torque}) {
        os << ',';
        write_csv_value(os, (*col)[i]);
      }
      os << '\n';
    }
  }
};

namespace detail {

/// Uniform grid covering [0, t_end] with spacing <= dt_request.
struct Grid {
  std::size_t steps;
  double h;
};

inline Grid make_grid(double t_end, double dt_request) {
  if (!(dt_request > 0.0)) throw PreconditionError("time step must be > 0");
  if (!(t_end > 0.0)) throw PreconditionError("t_end must be > 0");
  auto n = static_cast<std::size_t>(std::ceil(t_end / dt_request - 1e-9));
  if (n == 0) n = 1;
  return {n, t_end / static_cast<double>(n)};
}

/// Classical fixed-step RK4 for a small state vector.
template <std::size_t N, typename Deriv>
std::array<double, N> rk4_step(const std::array<double, N>& y, double t, double h,
                               Deriv&& f) {
  const auto k1 = f(t, y);
  std::array<double, N> tmp;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  const auto k2 = f(t + 0.5 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  const auto k3 = f(t + 0.5 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
  const auto k4 = f(t + h, tmp);
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

}  // namespace detail

}  // namespace tvcap
