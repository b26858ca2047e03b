// nuqsim: energy scans of neutrino propagation circuits.
//
//   nuqsim scan --scenario {slab|earth|msw} [--config file.json] [--energies min:max:n]
//               [--shots n] [--seed n] [--compile] [--synthesis exact|optimized]
//               [--csv out.csv] [--svg out.svg] [--dump-circuit]
//
// Exit codes: 0 success, 1 I/O or other failure, 2 config error, 3 numerical-domain error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nuqsim/errors.hpp"
#include "nuqsim/scan.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;

struct ScanFlags {
  std::string scenario;
  std::string config_path;
  std::string energies;
  std::optional<std::int64_t> shots;
  std::optional<std::uint64_t> seed;
  bool compile = false;
  std::string synthesis;
  std::string angle_model;
  std::optional<int> restarts;
  std::string csv;
  std::string svg;
  bool dump_circuit = false;
  bool serial = false;
};

nuqsim::ScanConfig resolve(const ScanFlags& f) {
  using namespace nuqsim;
  std::optional<Scenario> scenario;
  if (!f.scenario.empty()) scenario = parse_scenario(f.scenario);

  ScanConfig cfg = f.config_path.empty() ? ScanConfig::defaults(scenario.value_or(Scenario::kEarth))
                                         : load_config_file(f.config_path, scenario.value_or(Scenario::kEarth));
  // Flags win over the file.
  if (scenario && *scenario != cfg.scenario) {
    const bool grid_was_default = cfg.grid.min_gev == ScanConfig::default_grid(cfg.scenario).min_gev &&
                                  cfg.grid.max_gev == ScanConfig::default_grid(cfg.scenario).max_gev;
    cfg.scenario = *scenario;
    if (grid_was_default) cfg.grid = ScanConfig::default_grid(cfg.scenario);
  }
  if (!f.energies.empty()) cfg.grid = EnergyGrid::parse(f.energies);
  if (f.shots) cfg.shots = *f.shots;
  if (f.seed) cfg.seed = *f.seed;
  if (f.compile) cfg.compile = true;
  if (f.dump_circuit) cfg.dump_circuit = true;
  if (f.restarts) cfg.optimizer_restarts = *f.restarts;
  if (!f.synthesis.empty()) cfg.synthesis = f.synthesis == "optimized" ? Synthesis::kOptimized : Synthesis::kExact;
  if (!f.angle_model.empty())
    cfg.physics.angle_model = f.angle_model == "two_flavor" ? AngleModel::kTwoFlavor : AngleModel::kAtmospheric;
  if (!f.csv.empty()) cfg.csv_path = f.csv;
  if (!f.svg.empty()) cfg.svg_path = f.svg;
  cfg.validate();
  return cfg;
}

void print_summary(const nuqsim::ScanConfig& cfg, const nuqsim::ScanResult& result) {
  using namespace nuqsim;
  std::printf("# scenario %s, %zu energies, %lld shots, seed %llu\n", scenario_name(cfg.scenario),
              cfg.grid.values().size(), static_cast<long long>(cfg.shots), static_cast<unsigned long long>(cfg.seed));
  if (result.compile_report) {
    const auto& r = *result.compile_report;
    std::printf("# pulses: %d uncompiled (physical Z) -> %d with virtual Z, %d RZ folded%s\n", r.input_gate_count,
                r.physical_pulse_count, r.folded_rz_count, r.residual_elided ? ", trailing RZ elided" : "");
  }
  std::printf("%12s %6s %12s %12s %12s %10s\n", "energy_gev", "chan", "p_theory", "p_exact", "p_sampled", "stderr");
  for (const auto& row : result.rows)
    std::printf("%12.6g %6s %12.8f %12.8f %12.8f %10.6f\n", row.energy_gev, row.channel.empty() ? "-" : row.channel.c_str(),
                row.p_theory, row.p_exact, row.p_sampled, row.stderr_sampled);
  if (!result.infidelities.empty()) {
    double worst = 0.0;
    for (double v : result.infidelities) worst = std::max(worst, v);
    std::printf("# worst synthesis infidelity 1-F = %.3e\n", worst);
  }
}

int run_scan_command(const ScanFlags& flags) {
  using namespace nuqsim;
  const ScanConfig cfg = resolve(flags);
  const ScanResult result = run_scan(cfg, flags.serial ? Execution::kSerial : Execution::kParallel);
  print_summary(cfg, result);
  if (cfg.dump_circuit) {
    const auto energies = cfg.grid.values();
    for (std::size_t i = 0; i < result.circuit_dumps.size(); ++i)
      std::printf("# circuit at E = %.17g GeV\n%s", energies[i], result.circuit_dumps[i].c_str());
  }
  if (!cfg.csv_path.empty()) emit_csv(result, cfg.csv_path);
  if (!cfg.svg_path.empty()) emit_plot(result, cfg.svg_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neutrino propagation in matter on an emulated qubit device"};
  app.require_subcommand(1);

  ScanFlags flags;
  CLI::App* scan = app.add_subcommand("scan", "Run an energy scan and compare circuits with analytic probabilities");
  scan->add_option("--scenario", flags.scenario, "Scenario to simulate")
      ->check(CLI::IsMember({"slab", "earth", "msw"}));
  scan->add_option("--config", flags.config_path, "JSON config file (flags override it)");
  scan->add_option("--energies", flags.energies, "Energy grid in GeV as min:max:n");
  scan->add_option("--shots", flags.shots, "Shots per energy point (default 4096)");
  scan->add_option("--seed", flags.seed, "Sampling and optimizer seed (default 0)");
  scan->add_flag("--compile", flags.compile, "Apply the virtual-Z pass to slab and earth circuits");
  scan->add_option("--synthesis", flags.synthesis, "msw: exact 4x4 unitary or optimized two-CNOT circuit")
      ->check(CLI::IsMember({"exact", "optimized"}));
  scan->add_option("--angle-model", flags.angle_model, "slab/earth effective angle: atmospheric or two_flavor")
      ->check(CLI::IsMember({"atmospheric", "two_flavor"}));
  scan->add_option("--restarts", flags.restarts, "msw optimized: restarts per energy (default 1000)");
  scan->add_option("--csv", flags.csv, "Write results as CSV");
  scan->add_option("--svg", flags.svg, "Write an SVG plot");
  scan->add_flag("--dump-circuit", flags.dump_circuit, "Print the executed circuit for every energy");
  scan->add_flag("--serial", flags.serial, "Use the single-threaded reference path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    return run_scan_command(flags);
  } catch (const nuqsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nuqsim::DomainError& e) {
    std::cerr << "numerical-domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
