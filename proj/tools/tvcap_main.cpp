// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: scenario simulation, worst-case extraction
// synthesis, and the capacitance-ramp paradox table.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "tvcap/tvcap.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitModel = 3;

void print_value(const char* label, double v) {
  std::printf("%-28s % .12g\n", label, v);
}

void write_output_file(const std::string& path, const auto& writable) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw tvcap::Error("cannot open output file '" + path + "'");
  writable.write_csv(out);
  std::printf("trajectory written to %s\n", path.c_str());
}

void print_report(const tvcap::EnergyReport& report) {
  print_value("supplied electrical energy:", report.electrical);
  print_value("supplied mechanical energy:", report.mechanical);
  print_value("stored energy delta:", report.storage_delta);
  print_value("balance residual:", report.residual);
  for (std::size_t i = 0; i < report.per_cycle.size(); ++i) {
    std::printf("  cycle %-2zu supplied energy:  % .12g\n", i + 1, report.per_cycle[i]);
  }
}

int run_simulate(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) {
    std::fprintf(stderr, "error: cannot open config file '%s'\n", config_path.c_str());
    return kExitUsage;
  }
  const tvcap::ScenarioConfig config = tvcap::parse_config(in);

  using tvcap::Waveform;
  const Waveform zero = Waveform::constant(0.0);

  switch (config.kind) {
    case tvcap::ModelKind::one_port: {
      tvcap::CapacitanceProfile cap(config.capacitance.value());
      double v0 = config.initial_voltage.value_or(0.0);
      if (config.initial_charge) v0 = *config.initial_charge / cap.value(0.0);
      const tvcap::OnePortModel model{cap, v0};
      const auto traj = tvcap::simulate_current_driven(
          model, config.current.value(), *config.t_end, *config.dt);
      print_report(tvcap::energy_balance(traj));
      write_output_file(config.out, traj);
      return 0;
    }
    case tvcap::ModelKind::inductor_dual: {
      tvcap::CapacitanceProfile inductance(config.capacitance.value());
      const tvcap::InductorModel model{inductance, config.initial_voltage.value_or(0.0)};
      const auto traj = tvcap::simulate_voltage_driven(
          model, config.current.value(), *config.t_end, *config.dt);
      // columns read under the renaming: Q = flux, C = L, V = current, I = voltage
      print_report(tvcap::energy_balance(traj));
      write_output_file(config.out, traj);
      return 0;
    }
    case tvcap::ModelKind::two_port: {
      const tvcap::TwoPortModel model{*config.initial_charge,
                                      *config.initial_capacitance};
      const auto traj =
          tvcap::simulate_two_port(model, config.current.value(),
                                   config.modulation.value(), *config.t_end, *config.dt);
      print_report(tvcap::energy_balance(traj));
      write_output_file(config.out, traj);
      return 0;
    }
    case tvcap::ModelKind::mechanical: {
      const tvcap::MechanicalCapModel model{
          config.inertia.value(),         config.capacitance.value(),
          config.initial_charge.value_or(0.0), config.initial_angle.value_or(0.0),
          config.initial_momentum.value_or(0.0)};
      const auto traj = tvcap::simulate_state_modulated(
          model, config.current.value_or(zero), config.modulation.value_or(zero),
          *config.t_end, *config.dt);
      const std::size_t last = traj.size() - 1;
      print_value("total energy H(0):", tvcap::mechanical_energy(model, traj, 0));
      print_value("total energy H(end):", tvcap::mechanical_energy(model, traj, last));
      write_output_file(config.out, traj);
      return 0;
    }
    case tvcap::ModelKind::paradox: {
      const tvcap::ParadoxScenario scenario{
          *config.initial_charge, *config.initial_capacitance,
          config.t_end.value_or(1.0), *config.factor};
      const auto result = tvcap::run_paradox(scenario);
      print_value("stored energy before:", result.stored_before);
      print_value("stored energy after:", result.stored_after);
      print_value("mechanical work:", result.mechanical_work);
      print_value("balance residual:", result.residual);
      return 0;
    }
  }
  return kExitUsage;
}

int run_extract(double period, int order, const std::string& cap_kind,
                const std::string& cap_params, double amplitude, std::size_t grid,
                const std::string& out_path, const std::string& matrix_path) {
  const tvcap::Waveform cap_wave = tvcap::parse_waveform(cap_kind, cap_params);
  const tvcap::CapacitanceProfile cap(cap_wave);
  const tvcap::ExtractionProblem problem{cap, period, order, 0.0, grid};

  const tvcap::QuadraticEnergyForm form = tvcap::build_energy_form(problem);
  if (!matrix_path.empty()) {
    std::ofstream out(matrix_path);
    if (!out) throw tvcap::Error("cannot open output file '" + matrix_path + "'");
    form.write_csv(out);
  }

  const tvcap::ExtractionResult result =
      tvcap::synthesize_extraction_current(problem, amplitude);
  if (result.passive) {
    std::printf("passive over family: no extracting current up to order %d\n", order);
    print_value("energy per cycle:", 0.0);
    return 0;
  }

  std::printf("harmonic   cos coefficient        sin coefficient\n");
  for (int k = 0; k < order; ++k) {
    std::printf("%4d      % .17g   % .17g\n", k + 1, result.coefficients(2 * k),
                result.coefficients(2 * k + 1));
  }
  print_value("energy per cycle (unit norm):", result.energy_per_unit_norm);
  print_value("energy per cycle (amplitude):", result.energy_per_cycle);
  print_value("coefficient norm:", result.amplitude);

  if (!out_path.empty()) {
    const auto [kind, params] = tvcap::waveform_spec(result.current);
    std::ofstream out(out_path);
    if (!out) throw tvcap::Error("cannot open output file '" + out_path + "'");
    out << "I.kind = " << kind << "\n";
    out << "I.params = " << params << "\n";
    std::printf("current profile written to %s\n", out_path.c_str());
  }
  return 0;
}

int run_paradox_cmd(double charge, double c0, double factor,
                    const std::vector<double>& durations) {
  std::printf("%-12s %-16s %-16s %-18s %-12s\n", "T", "S_before", "S_after", "W_mech",
              "residual");
  for (double duration : durations) {
    const tvcap::ParadoxScenario scenario{charge, c0, duration, factor};
    const auto result = tvcap::run_paradox(scenario);
    std::printf("%-12g % -15.10g % -15.10g % -17.12g % -12.3g\n", duration,
                result.stored_before, result.stored_after, result.mechanical_work,
                result.residual);
  }
  std::printf("closed-form limit (any T):   % .12g\n",
              tvcap::closed_form_limit({charge, c0, 1.0, factor}));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-varying capacitor laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "run a scenario config file");
  simulate->add_option("config", config_path, "scenario config file")->required();

  double period = 4.0 * 3.14159265358979323846;
  int order = 4;
  std::string cap_kind = "fourier";
  std::string cap_params = "0.5 2 0 1";
  double amplitude = 1.0;
  std::size_t grid = 4096;
  std::string out_path, matrix_path;
  auto* extract = app.add_subcommand(
      "extract", "synthesize a worst-case periodic current for a cyclic capacitance");
  extract->add_option("--period", period, "capacitance period T [s]")
      ->check(CLI::PositiveNumber);
  extract->add_option("--order", order, "number of harmonics")
      ->check(CLI::PositiveNumber);
  extract->add_option("--C-kind", cap_kind, "capacitance waveform kind");
  extract->add_option("--C-params", cap_params, "capacitance waveform parameters");
  extract->add_option("--amplitude", amplitude, "coefficient norm of the result");
  extract->add_option("--grid", grid, "quadrature grid per period");
  extract->add_option("--out", out_path, "write the profile as a config waveform spec");
  extract->add_option("--matrix-out", matrix_path, "dump the energy form as CSV");

  double charge = 1.0, c0 = 1.0, factor = 2.0;
  std::vector<double> durations{1.0, 0.1, 0.01, 0.001};
  auto* paradox = app.add_subcommand(
      "paradox", "charge-conserving capacitance ramp energy bookkeeping");
  paradox->add_option("--Q", charge, "conserved charge [C]");
  paradox->add_option("--C0", c0, "initial capacitance [F]")->check(CLI::PositiveNumber);
  paradox->add_option("--k", factor, "end capacitance factor")->check(CLI::PositiveNumber);
  paradox->add_option("--T-sweep", durations, "ramp durations to sweep [s]")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) return run_simulate(config_path);
    if (extract->parsed())
      return run_extract(period, order, cap_kind, cap_params, amplitude, grid, out_path,
                         matrix_path);
    if (paradox->parsed()) return run_paradox_cmd(charge, c0, factor, durations);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const tvcap::ModelError& e) {
    std::fprintf(stderr, "model error: %s\n", e.what());
    return kExitModel;
  } catch (const tvcap::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
