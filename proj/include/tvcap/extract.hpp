// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <vector>

#include "tvcap/capacitance.hpp"
#include "tvcap/oneport.hpp"
#include "tvcap/quadrature.hpp"
#include "tvcap/trajectory.hpp"

namespace tvcap {

/// Worst-case excitation setup: zero-mean currents built from harmonics
/// 1..N of omega = 2*pi/period drive the one-port capacitor from Q(0) = 0.
struct ExtractionProblem {
  CapacitanceProfile capacitance;
  double period;                  // T [s]; C must be T-periodic
  int harmonic_order;             // N >= 1
  double initial_charge = 0.0;    // must stay 0 so the energy is purely quadratic
  std::size_t grid = 4096;        // quadrature resolution per period
};

/// Coefficient layout for the Fourier family: c = [a1, b1, a2, b2, ...] with
/// I(t) = sum_k a_k cos(k w t) + b_k sin(k w t).
struct QuadraticEnergyForm {
  Eigen::MatrixXd matrix;  // symmetric 2N x 2N; cycle energy E(c) = c' M c / 2
  double base_frequency = 0.0;
  int harmonic_order = 0;

  double energy(const Eigen::VectorXd& c) const { return 0.5 * c.dot(matrix * c); }

  /// Fourier current waveform for a coefficient vector.
  Waveform current(const Eigen::VectorXd& c) const {
    std::vector<double> cosine(static_cast<std::size_t>(harmonic_order));
    std::vector<double> sine(static_cast<std::size_t>(harmonic_order));
    for (int k = 0; k < harmonic_order; ++k) {
      cosine[static_cast<std::size_t>(k)] = c(2 * k);
      sine[static_cast<std::size_t>(k)] = c(2 * k + 1);
    }
    return Waveform::fourier(base_frequency, 0.0, std::move(cosine), std::move(sine));
  }

  /// Matrix dump, one CSV row per matrix row.
  void write_csv(std::ostream& os) const {
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
      for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
        if (j) os << ',';
        write_csv_value(os, matrix(i, j));
      }
      os << '\n';
    }
  }
};

namespace detail {

inline void check_periodic(const CapacitanceProfile& cap, double period,
                           std::size_t grid) {
  double scale = 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double t = period * static_cast<double>(i) / static_cast<double>(grid);
    const double a = cap.value(t);
    const double b = cap.value(t + period);
    scale = std::max({scale, std::abs(a), std::abs(b)});
    worst = std::max(worst, std::abs(a - b));
  }
  if (worst > 1e-9 * scale)
    throw PreconditionError("extraction: capacitance is not periodic over the period");
}

}  // namespace detail

/// Assembles the symmetric matrix M with E(c) = c' M c / 2 over one cycle.
///
/// With Q(0) = 0 the map from coefficients to voltage is linear: each basis
/// current cos/sin(k w t) has a closed-form charge, V_j = Q_j / C on the
/// grid, and the cycle energy integral int Cdot V^2 / 2 dt becomes the
/// quadratic form with entries M_ij = int Cdot V_i V_j dt.
inline QuadraticEnergyForm build_energy_form(const ExtractionProblem& problem) {
  if (problem.harmonic_order < 1)
    throw PreconditionError("extraction: harmonic order must be >= 1");
  if (problem.initial_charge != 0.0)
    throw PreconditionError("extraction: requires Q(0) = 0");
  if (!(problem.period > 0.0))
    throw PreconditionError("extraction: period must be > 0");
  std::size_t grid = problem.grid < 16 ? 16 : problem.grid;
  if (grid % 2 != 0) ++grid;
  detail::check_periodic(problem.capacitance, problem.period, grid);
  problem.capacitance.require_positive(0.0, problem.period,
                                       problem.period / static_cast<double>(4 * grid));

  const double omega = 2.0 * std::numbers::pi / problem.period;
  const double h = problem.period / static_cast<double>(grid);
  const int dim = 2 * problem.harmonic_order;

  std::vector<double> cdot(grid + 1), cap(grid + 1);
  for (std::size_t i = 0; i <= grid; ++i) {
    const double t = static_cast<double>(i) * h;
    cap[i] = problem.capacitance.value(t);
    cdot[i] = problem.capacitance.rate(t);
  }

  // basis voltages: V for I = cos(k w t) has Q = sin(k w t)/(k w),
  //                 V for I = sin(k w t) has Q = (1 - cos(k w t))/(k w)
  std::vector<std::vector<double>> basis_v(static_cast<std::size_t>(dim));
  for (int k = 1; k <= problem.harmonic_order; ++k) {
    const double kw = static_cast<double>(k) * omega;
    auto& vc = basis_v[static_cast<std::size_t>(2 * (k - 1))];
    auto& vs = basis_v[static_cast<std::size_t>(2 * (k - 1) + 1)];
    vc.resize(grid + 1);
    vs.resize(grid + 1);
    for (std::size_t i = 0; i <= grid; ++i) {
      const double t = static_cast<double>(i) * h;
      vc[i] = std::sin(kw * t) / kw / cap[i];
      vs[i] = (1.0 - std::cos(kw * t)) / kw / cap[i];
    }
  }

  QuadraticEnergyForm form;
  form.base_frequency = omega;
  form.harmonic_order = problem.harmonic_order;
  form.matrix.resize(dim, dim);
  std::vector<double> integrand(grid + 1);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      const auto& vi = basis_v[static_cast<std::size_t>(i)];
      const auto& vj = basis_v[static_cast<std::size_t>(j)];
      for (std::size_t g = 0; g <= grid; ++g) integrand[g] = cdot[g] * vi[g] * vj[g];
      const double m = simpson_samples(integrand, h);
      form.matrix(i, j) = m;
      form.matrix(j, i) = m;
    }
  }
  return form;
}

struct ExtractionResult {
  bool passive = false;          // no energy-extracting direction in the family
  Waveform current;              // synthesized profile (zero when passive)
  Eigen::VectorXd coefficients;  // at the reported amplitude
  double energy_per_cycle = 0.0;      // E(c) at the reported amplitude [J]
  double energy_per_unit_norm = 0.0;  // lambda_min / 2 [J per unit ||c||^2]
  double amplitude = 0.0;             // coefficient norm used
};

/// Globally optimal direction per unit coefficient norm: the eigenvector of
/// the smallest eigenvalue of M. Falls back to a passive verdict when M has
/// no negative eigenvalue beyond roundoff.
inline ExtractionResult synthesize_extraction_current(const ExtractionProblem& problem,
                                                      double amplitude = 1.0) {
  const QuadraticEnergyForm form = build_energy_form(problem);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(form.matrix);
  const double lambda_min = solver.eigenvalues()(0);
  const double scale = std::max(1.0, form.matrix.cwiseAbs().maxCoeff());

  ExtractionResult result;
  result.energy_per_unit_norm = 0.5 * lambda_min;
  if (lambda_min >= -1e-12 * scale) {
    result.passive = true;
    result.current = Waveform::constant(0.0);
    result.coefficients = Eigen::VectorXd::Zero(form.matrix.rows());
    result.energy_per_unit_norm = std::max(0.0, result.energy_per_unit_norm);
    return result;
  }
  result.coefficients = solver.eigenvectors().col(0) * amplitude;
  result.amplitude = amplitude;
  result.energy_per_cycle = 0.5 * lambda_min * amplitude * amplitude;
  result.current = form.current(result.coefficients);
  return result;
}

/// The six-term zero-mean reference profile on the base frequency 1/2 rad/s
/// used by the energy-harvesting scenario.
inline Waveform harvesting_profile() {
  return Waveform::fourier(0.5, 0.0, {-0.25, -1.25, 2.75, -1.25}, {2.5, -5.0, 0.0, 0.0});
}

/// The matching cyclic capacitance C(t) = 2 + sin(t/2).
inline CapacitanceProfile harvesting_capacitance() {
  return CapacitanceProfile::sinusoidal(2.0, 1.0, 0.5);
}

struct LissajousData {
  std::vector<std::array<double, 2>> points;  // (Q, V) samples
  double signed_area = 0.0;                   // shoelace area = loop integral V dQ [J]
  std::vector<double> loop_areas;             // per full cycle, when a period is given
};

namespace detail {

/// Shoelace sum oriented so that the result equals the loop integral V dQ;
/// clockwise loops in the (Q, V) plane are positive (energy absorption).
inline double shoelace(std::span<const double> q, std::span<const double> v) {
  double twice = 0.0;
  const std::size_t n = q.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    twice += v[i] * q[i + 1] - v[i + 1] * q[i];
  twice += v[n - 1] * q[0] - v[0] * q[n - 1];  // close the polygon
  return 0.5 * twice;
}

}  // namespace detail

/// Charge-voltage portrait of a trajectory and its enclosed signed area.
/// The area is the second, geometric route to the supplied electrical
/// energy; it must agree with the time integral of V*I.
inline LissajousData lissajous(const PortTrajectory& traj, double cycle_period = 0.0) {
  if (traj.size() < 3) throw PreconditionError("lissajous: trajectory too short");
  LissajousData data;
  data.points.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i)
    data.points.push_back({traj.Q[i], traj.V[i]});
  data.signed_area = detail::shoelace(traj.Q, traj.V);
  if (cycle_period > 0.0) {
    const auto per_cycle = static_cast<std::size_t>(std::llround(cycle_period / traj.step));
    if (per_cycle < 2) throw PreconditionError("lissajous: cycle shorter than grid step");
    for (std::size_t begin = 0; begin + per_cycle < traj.size(); begin += per_cycle) {
      data.loop_areas.push_back(
          detail::shoelace(std::span(traj.Q).subspan(begin, per_cycle + 1),
                           std::span(traj.V).subspan(begin, per_cycle + 1)));
    }
  }
  return data;
}

/// CSV with header `Q,V`, one row per sample.
inline void write_lissajous_csv(std::ostream& os, const LissajousData& data) {
  os << "Q,V\n";
  for (const auto& p : data.points) {
    write_csv_value(os, p[0]);
    os << ',';
    write_csv_value(os, p[1]);
    os << '\n';
  }
}

}  // namespace tvcap
