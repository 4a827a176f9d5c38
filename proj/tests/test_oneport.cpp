// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tvcap/oneport.hpp"

using namespace tvcap;
using Catch::Matchers::WithinAbs;

TEST_CASE("charge integration is RK4-exact for polynomial currents") {
  // I = 2t on constant C: Q(t) = t^2 exactly (RK4 integrates cubics exactly)
  const OnePortModel model{CapacitanceProfile::constant(1.0), 0.0};
  const auto traj = simulate_current_driven(model, Waveform::polynomial({0.0, 2.0}),
                                            2.0, 0.1);
  CHECK_THAT(traj.Q.back(), WithinAbs(4.0, 1e-13));
  CHECK_THAT(traj.V.back(), WithinAbs(4.0, 1e-13));
}

TEST_CASE("linear ramp capacitance with constant current slope") {
  // C = 1 + t, I = 2(1 + 2t)/... use the closed family: with C = C0 + phi t
  // and I = (C0 + 2 phi t) a, the complete solution is V = a t + C0 V0 / C.
  const double a = 2.0, v0 = 2.0;
  const OnePortModel model{CapacitanceProfile::ramp(1.0, 1.0), v0};
  const Waveform current = Waveform::polynomial({a, 4.0 * a / 2.0});  // (1 + 2t) a
  const auto traj = simulate_current_driven(model, current, 1.0, 0.001);
  const std::size_t i = traj.index_at(1.0);
  const double expected = a * 1.0 + 1.0 * v0 / 2.0;  // V(1) = 2 + 1 = 3
  CHECK_THAT(traj.V[i], WithinAbs(expected, 1e-9));
  // and via the integrating-factor route, independently of RK4
  CHECK_THAT(solve_voltage_ode(model, current, 1.0), WithinAbs(expected, 1e-9));
}

TEST_CASE("integrating-factor homogeneous decay is C(0)/C(t)") {
  const OnePortModel model{CapacitanceProfile::ramp(1.0, 1.0), 2.0};
  const Waveform zero = Waveform::constant(0.0);
  CHECK_THAT(solve_voltage_ode(model, zero, 1.0), WithinAbs(2.0 * 1.0 / 2.0, 1e-10));
  CHECK_THAT(solve_voltage_ode(model, zero, 3.0), WithinAbs(2.0 * 1.0 / 4.0, 1e-10));
  CHECK_THAT(solve_voltage_ode(model, zero, 0.0), WithinAbs(2.0, 1e-15));
  CHECK_THROWS_AS(solve_voltage_ode(model, zero, -1.0), PreconditionError);
}

TEST_CASE("ODE route cross-checks the RK4 path on a randomized scenario") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const OnePortModel model{testing::random_capacitance(rng), 0.0};
    const Waveform current = testing::random_current(rng);
    const auto traj = simulate_current_driven(model, current, testing::kPeriod,
                                              testing::kStep);
    for (double t : {testing::kPeriod / 4.0, testing::kPeriod / 2.0, testing::kPeriod}) {
      const std::size_t i = traj.index_at(t);
      CHECK_THAT(solve_voltage_ode(model, current, t, 8192),
                 WithinAbs(traj.V[i], 1e-7));
    }
  }
}

TEST_CASE("cyclic control drive returns to the initial state") {
  // I = cos(t) on C = 2 + sin(t/2): Q(T) = sin(T) = 0 over the full cycle
  const OnePortModel model = testing::harvesting_model();
  const Waveform control = Waveform::fourier(0.5, 0.0, {0.0, 1.0}, {0.0, 0.0});
  const auto traj = simulate_current_driven(model, control, testing::kPeriod,
                                            testing::kStep);
  CHECK_THAT(traj.Q.back(), WithinAbs(0.0, 1e-9));
  CHECK_THAT(traj.V.back(), WithinAbs(0.0, 1e-9));
}

TEST_CASE("current_from_voltage closed forms") {
  SECTION("complete-solution family: I = (C0 + 2 phi t) a") {
    const OnePortModel model{CapacitanceProfile::ramp(1.0, 1.0), 0.0};
    const Waveform voltage = Waveform::polynomial({0.0, 2.0});  // V = 2t, a = 2
    const Waveform current = current_from_voltage(model, voltage);
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
      CHECK_THAT(current(t), WithinAbs((1.0 + 2.0 * t) * 2.0, 1e-13));
    }
  }
  SECTION("frozen voltage on a ramp still draws current: I = phi v0") {
    const OnePortModel model{CapacitanceProfile::ramp(1.0, 0.5), 3.0};
    const Waveform current = current_from_voltage(model, Waveform::constant(3.0));
    CHECK_THAT(current(0.0), WithinAbs(1.5, 1e-14));
    CHECK_THAT(current(4.0), WithinAbs(1.5, 1e-14));
  }
  SECTION("constant capacitance, constant voltage: no current") {
    const OnePortModel model{CapacitanceProfile::constant(2.0), 1.0};
    CHECK_THAT(current_from_voltage(model, Waveform::constant(1.0))(0.7),
               WithinAbs(0.0, 1e-15));
  }
  SECTION("sampled voltage requires the grid overload") {
    const OnePortModel model{CapacitanceProfile::constant(2.0), 0.0};
    CHECK_THROWS_AS(
        current_from_voltage(model, Waveform::sampled(0.0, 0.1, {0.0, 1.0, 2.0})),
        UnsupportedOperation);
  }
}

TEST_CASE("reference-shift residual equals Cdot * psi") {
  const Waveform voltage = Waveform::polynomial({1.0, -0.5});
  SECTION("constant capacitance: invariant under shifts") {
    const OnePortModel model{CapacitanceProfile::constant(3.0), 0.0};
    const Waveform res = gauge_residual(model, voltage, 7.0);
    for (double t : {0.0, 1.0, 9.0}) CHECK_THAT(res(t), WithinAbs(0.0, 1e-13));
  }
  SECTION("ramp capacitance: residual is the constant phi * psi") {
    const OnePortModel model{CapacitanceProfile::ramp(1.0, 0.25), 0.0};
    const Waveform res = gauge_residual(model, voltage, 4.0);
    for (double t : {0.0, 1.0, 9.0}) CHECK_THAT(res(t), WithinAbs(1.0, 1e-13));
  }
  SECTION("zero shift: no residual regardless of C") {
    std::mt19937 rng(3);
    const OnePortModel model{testing::random_capacitance(rng), 0.0};
    // share the base frequency so the products stay in closed form
    const Waveform cyclic_v = Waveform::fourier(0.5, 1.0, {0.5}, {-0.25});
    const Waveform res = gauge_residual(model, cyclic_v, 0.0);
    for (double t : {0.0, 2.0, 6.0}) CHECK_THAT(res(t), WithinAbs(0.0, 1e-13));
  }
}

TEST_CASE("round trip: simulating the induced current reproduces the voltage") {
  std::mt19937 rng(99);
  const CapacitanceProfile cap = testing::random_capacitance(rng);
  // prescribed voltage sharing the base frequency so the product stays closed form
  const Waveform voltage = Waveform::fourier(0.5, 1.0, {0.5, -0.25}, {0.75});
  const OnePortModel model{cap, voltage(0.0)};
  const Waveform current = current_from_voltage(model, voltage);
  const auto traj = simulate_current_driven(model, current, testing::kPeriod,
                                            testing::kStep / 2.0);
  for (std::size_t i = 0; i < traj.size(); i += traj.size() / 7) {
    CHECK_THAT(traj.V[i], WithinAbs(voltage(traj.t[i]), 1e-8));
  }
}

TEST_CASE("power balance residual shrinks at fourth order with the step") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 3; ++trial) {
    const OnePortModel model{testing::random_capacitance(rng), 0.0};
    const Waveform current = testing::random_current(rng);
    auto residual = [&](double dt) {
      const auto traj = simulate_current_driven(model, current, testing::kPeriod, dt);
      return std::abs(energy_balance(traj).residual);
    };
    const double coarse = residual(testing::kPeriod / 512.0);
    const double fine = residual(testing::kPeriod / 1024.0);
    if (coarse > 1e-12) CHECK(coarse / fine > 8.0);
  }
}

TEST_CASE("nonpositive capacitance is rejected before simulating") {
  const OnePortModel model{CapacitanceProfile::ramp(1.0, -1.0), 0.0};
  CHECK_THROWS_AS(
      simulate_current_driven(model, Waveform::constant(0.0), 2.0, 0.01),
      ModelError);
  try {
    simulate_current_driven(model, Waveform::constant(0.0), 2.0, 0.01);
  } catch (const ModelError& e) {
    CHECK(e.time() >= 0.99);  // C = 1 - t crosses zero at t = 1
    CHECK(e.time() <= 1.01);
  }
}
