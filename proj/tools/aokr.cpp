// aokr — command-line front end for the atom-optics kicked-rotor toolkit.
//
// Subcommands:
//   sweep      energy-vs-kbar parameter sweeps (CSV out)
//   portrait   stroboscopic phase portraits (CSV out)
//   calibrate  kick-ratio estimation from sweep CSVs
//   presets    list the built-in figure presets
//
// Exit codes: 0 success, 1 usage, 2 schema/calibration failure,
// 3 numerical failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aokr/aokr.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitSchemaOrCalibration = 2;
constexpr int kExitNumerical = 3;

std::vector<aokr::Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<aokr::Method> methods;
  methods.reserve(names.size());
  for (const auto& name : names) methods.push_back(aokr::method_from_string(name));
  return methods;
}

struct SweepCli {
  std::string preset;
  double kbar_min = 0.0, kbar_max = 0.0;
  int steps = 0;
  std::string spacing;
  double kick_ratio = 0.0, sigma_p = 0.0;
  int n_kicks = 0;
  std::vector<std::string> methods;
  std::size_t n_traj = 0;
  std::uint64_t seed = 0;
  double pulse_width_ns = 0.0;
  unsigned workers = 0;
  std::string output;
};

struct PortraitCli {
  std::string preset;
  double kbar = 0.0, kick_ratio = 0.0, sigma_p = 0.0;
  int n_iter = 0;
  std::size_t n_traj = 0;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string output;
};

struct CalibrateCli {
  std::string mode = "plateau";
  std::string input;
  std::string one_kick;
  std::string two_kick;
  double sigma_p = 0.0;
};

int run_sweep_cmd(const SweepCli& cli, const CLI::App& cmd) {
  aokr::SweepConfig config;
  std::string default_output;
  if (!cli.preset.empty()) {
    const aokr::SweepPreset* p = aokr::find_sweep_preset(cli.preset);
    if (p == nullptr) {
      throw aokr::invalid_parameter("unknown sweep preset '" + cli.preset +
                                    "' (see `aokr presets`)");
    }
    config = p->config;
    default_output = p->name + ".csv";
  }
  auto given = [&cmd](const std::string& flag) { return cmd.count(flag) > 0; };
  if (given("--kbar-min")) config.kbar_min = cli.kbar_min;
  if (given("--kbar-max")) config.kbar_max = cli.kbar_max;
  if (given("--steps")) config.steps = cli.steps;
  if (given("--spacing")) config.spacing = aokr::grid_spacing_from_string(cli.spacing);
  if (given("--kick-ratio")) config.kick_ratio = cli.kick_ratio;
  if (given("--sigma-p")) config.sigma_p = cli.sigma_p;
  if (given("--n-kicks")) config.n_kicks = cli.n_kicks;
  if (given("--methods")) config.methods = parse_methods(cli.methods);
  if (given("--n-traj")) config.n_traj = cli.n_traj;
  if (given("--seed")) config.seed = cli.seed;
  if (given("--pulse-width-ns")) config.pulse_width_ns = cli.pulse_width_ns;
  if (given("--workers")) config.workers = cli.workers;
  if (given("--output")) {
    config.output = cli.output;
  } else {
    config.output = default_output;  // empty (stdout) unless a preset named one
  }

  const std::vector<aokr::EnergyRecord> records = aokr::run_sweep(config);
  if (config.output.empty() || config.output == "-") {
    aokr::write_energy_csv(std::cout, records);
  } else {
    aokr::write_energy_csv_file(config.output, records);
    std::cerr << "wrote " << records.size() << " rows to " << config.output << "\n";
  }
  return 0;
}

int run_portrait_cmd(const PortraitCli& cli, const CLI::App& cmd) {
  double kbar = 0.3, kick_ratio = 5.5, sigma_p = 3.6;
  int n_iter = 100;
  std::size_t n_traj = 500;
  std::uint64_t seed = 42;
  std::string default_output;
  if (!cli.preset.empty()) {
    const aokr::PortraitPreset* p = aokr::find_portrait_preset(cli.preset);
    if (p == nullptr) {
      throw aokr::invalid_parameter("unknown portrait preset '" + cli.preset +
                                    "' (see `aokr presets`)");
    }
    kbar = p->kbar;
    kick_ratio = p->kick_ratio;
    sigma_p = p->sigma_p;
    n_iter = p->n_iter;
    n_traj = p->n_traj;
    seed = p->seed;
    default_output = p->name + ".csv";
  } else if (cmd.count("--kbar") == 0) {
    throw aokr::invalid_parameter("portrait requires --preset or explicit --kbar");
  }
  auto given = [&cmd](const std::string& flag) { return cmd.count(flag) > 0; };
  if (given("--kbar")) kbar = cli.kbar;
  if (given("--kick-ratio")) kick_ratio = cli.kick_ratio;
  if (given("--sigma-p")) sigma_p = cli.sigma_p;
  if (given("--n-iter")) n_iter = cli.n_iter;
  if (given("--n-traj")) n_traj = cli.n_traj;
  if (given("--seed")) seed = cli.seed;
  std::string output = given("--output") ? cli.output : default_output;

  const aokr::EnsembleSpec spec(n_traj, seed, sigma_p);
  const aokr::RotorParams params(kbar, kick_ratio, sigma_p);
  const auto points = aokr::phase_portrait(spec, params, n_iter, cli.workers);
  if (output.empty() || output == "-") {
    aokr::write_portrait_csv(std::cout, points);
  } else {
    aokr::write_portrait_csv_file(output, points);
    std::cerr << "wrote " << points.size() << " points to " << output << "\n";
  }
  return 0;
}

int run_calibrate_cmd(const CalibrateCli& cli, const CLI::App& cmd) {
  aokr::KickRatioEstimate estimate{};
  if (cli.mode == "plateau") {
    if (cli.input.empty()) {
      throw aokr::invalid_parameter("calibrate --mode plateau requires --input");
    }
    if (cmd.count("--sigma-p") == 0) {
      throw aokr::invalid_parameter("calibrate --mode plateau requires --sigma-p");
    }
    const auto records = aokr::read_energy_csv_file(cli.input);
    estimate = aokr::calibrate_plateau(records, cli.sigma_p);
  } else if (cli.mode == "difference") {
    const std::string one = cli.one_kick.empty() ? cli.input : cli.one_kick;
    const std::string two = cli.two_kick.empty() ? cli.input : cli.two_kick;
    if (one.empty() || two.empty()) {
      throw aokr::invalid_parameter(
          "calibrate --mode difference requires --one-kick/--two-kick (or --input)");
    }
    const auto one_records = aokr::read_energy_csv_file(one);
    const auto two_records = aokr::read_energy_csv_file(two);
    estimate = aokr::calibrate_difference(one_records, two_records);
  } else {
    throw aokr::invalid_parameter("unknown calibrate mode '" + cli.mode +
                                  "' (expected plateau|difference)");
  }
  std::printf("kick_ratio = %.17g +/- %.17g\n", estimate.value, estimate.uncertainty);
  return 0;
}

int run_presets_cmd() {
  std::printf("sweep presets:\n");
  for (const auto& p : aokr::sweep_presets()) {
    std::printf("  %-12s %s\n", p.name.c_str(), p.description.c_str());
  }
  std::printf("portrait presets:\n");
  for (const auto& p : aokr::portrait_presets()) {
    std::printf("  %-12s %s\n", p.name.c_str(), p.description.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atom-optics kicked rotor: sweeps, portraits, calibration"};
  app.require_subcommand(1);

  SweepCli sweep_cli;
  CLI::App* sweep = app.add_subcommand("sweep", "energy vs kbar sweep, CSV output");
  sweep->add_option("--preset", sweep_cli.preset, "figure preset name (see `aokr presets`)");
  sweep->add_option("--kbar-min", sweep_cli.kbar_min, "grid start (must be > 0)");
  sweep->add_option("--kbar-max", sweep_cli.kbar_max, "grid end");
  sweep->add_option("--steps", sweep_cli.steps, "number of grid points");
  sweep->add_option("--spacing", sweep_cli.spacing, "grid spacing: linear|log");
  sweep->add_option("--kick-ratio", sweep_cli.kick_ratio, "k = kappa/kbar");
  sweep->add_option("--sigma-p", sweep_cli.sigma_p, "initial momentum spread (2-photon recoils)");
  sweep->add_option("--n-kicks", sweep_cli.n_kicks, "kicks per trajectory (simulations)");
  sweep->add_option("--methods", sweep_cli.methods,
                    "comma-separated subset of analytic1,analytic2,analytic_broad,"
                    "classical,quantum_delta,quantum_pulse")
      ->delimiter(',');
  sweep->add_option("--n-traj", sweep_cli.n_traj, "trajectories per simulated point");
  sweep->add_option("--seed", sweep_cli.seed, "ensemble seed");
  sweep->add_option("--pulse-width-ns", sweep_cli.pulse_width_ns,
                    "rectangular pulse width in ns (quantum_pulse)");
  sweep->add_option("--workers", sweep_cli.workers,
                    "worker threads (0 = AOKR_WORKERS env or hardware)");
  sweep->add_option("--output", sweep_cli.output, "output CSV path ('-' = stdout)");

  PortraitCli portrait_cli;
  CLI::App* portrait = app.add_subcommand("portrait", "phase portrait, CSV output");
  portrait->add_option("--preset", portrait_cli.preset, "fig5-top|fig5-middle|fig5-bottom");
  portrait->add_option("--kbar", portrait_cli.kbar, "effective Planck constant");
  portrait->add_option("--kick-ratio", portrait_cli.kick_ratio, "k = kappa/kbar");
  portrait->add_option("--sigma-p", portrait_cli.sigma_p, "initial momentum spread");
  portrait->add_option("--n-iter", portrait_cli.n_iter, "map iterations per trajectory");
  portrait->add_option("--n-traj", portrait_cli.n_traj, "trajectory count");
  portrait->add_option("--seed", portrait_cli.seed, "ensemble seed");
  portrait->add_option("--workers", portrait_cli.workers,
                       "worker threads (0 = AOKR_WORKERS env or hardware)");
  portrait->add_option("--output", portrait_cli.output, "output CSV path ('-' = stdout)");

  CalibrateCli calibrate_cli;
  CLI::App* calibrate = app.add_subcommand("calibrate", "estimate kick ratio from sweep CSVs");
  calibrate->add_option("--mode", calibrate_cli.mode, "plateau|difference");
  calibrate->add_option("--input", calibrate_cli.input, "input CSV (plateau, or both roles)");
  calibrate->add_option("--one-kick", calibrate_cli.one_kick, "one-kick CSV (difference mode)");
  calibrate->add_option("--two-kick", calibrate_cli.two_kick, "two-kick CSV (difference mode)");
  calibrate->add_option("--sigma-p", calibrate_cli.sigma_p, "sigma_p used in plateau inversion");

  CLI::App* presets = app.add_subcommand("presets", "list built-in figure presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sweep->parsed()) return run_sweep_cmd(sweep_cli, *sweep);
    if (portrait->parsed()) return run_portrait_cmd(portrait_cli, *portrait);
    if (calibrate->parsed()) return run_calibrate_cmd(calibrate_cli, *calibrate);
    if (presets->parsed()) return run_presets_cmd();
  } catch (const aokr::calibration_error& e) {
    std::cerr << "calibration error: " << e.what() << "\n";
    return kExitSchemaOrCalibration;
  } catch (const aokr::schema_error& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchemaOrCalibration;
  } catch (const aokr::truncation_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const aokr::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const aokr::invalid_parameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
