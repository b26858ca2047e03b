#pragma once

// Energy scans: build the scenario circuit at each grid point, execute it
// exactly and with shots, and pair it with the analytic probability.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nuqsim/compile.hpp"
#include "nuqsim/execution.hpp"
#include "nuqsim/physics.hpp"

namespace nuqsim {

enum class Scenario { kSlab, kEarth, kMsw };
enum class Synthesis { kExact, kOptimized };

const char* scenario_name(Scenario s);
Scenario parse_scenario(const std::string& name);

struct EnergyGrid {
  double min_gev = 1.0;
  double max_gev = 25.0;
  int points = 50;

  /// Evenly spaced, both ends included. A single point sits at min_gev.
  std::vector<double> values() const;
  static EnergyGrid parse(const std::string& text);  // "min:max:n"
};

/// Physics inputs. Angles in degrees, splittings in eV^2, densities in
/// g/cm^3, lengths in km. The splittings, Ye and the solar production
/// density are PDG-typical defaults, not fitted values.
struct PhysicsConfig {
  double theta12_deg = 33.5;
  double theta13_deg = 9.0;
  double theta23_deg = 45.0;
  double dm2_31 = 2.5e-3;
  double dm2_21 = 7.5e-5;
  double ye = 0.5;

  // slab scenario: `periods` repetitions of (rho1, dx1), (rho2, dx2)
  double slab_rho1 = 5.0;
  double slab_dx1_km = 500.0;
  double slab_rho2 = 10.0;
  double slab_dx2_km = 1000.0;
  int slab_periods = 5;

  // earth scenario: mantle, core, mantle
  double mantle_rho = 5.0;
  double mantle_km = 5000.0;
  double core_rho = 10.0;
  double core_km = 2500.0;

  // msw scenario: density at the production point
  double production_rho = 150.0;

  AngleModel angle_model = AngleModel::kAtmospheric;
};

struct ScanConfig {
  Scenario scenario = Scenario::kEarth;
  EnergyGrid grid;
  std::int64_t shots = 4096;
  std::uint64_t seed = 0;
  bool compile = false;
  Synthesis synthesis = Synthesis::kExact;
  int optimizer_restarts = 1000;
  double optimizer_tol = 1e-9;
  PhysicsConfig physics;
  bool dump_circuit = false;
  std::string csv_path;
  std::string svg_path;

  /// Default energy grid per scenario: 1-25 GeV for slab and earth,
  /// 0.001-0.05 GeV for msw.
  static EnergyGrid default_grid(Scenario s);
  static ScanConfig defaults(Scenario s);

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Reads a JSON config. Unknown keys are rejected. Missing keys keep the
/// defaults for the scenario named in the document (or `fallback`).
/// Throws ConfigError with the JSON field path, or the line for syntax errors.
ScanConfig load_config(const std::string& json_text, Scenario fallback = Scenario::kEarth);
ScanConfig load_config_file(const std::string& path, Scenario fallback = Scenario::kEarth);

struct ScanRow {
  double energy_gev = 0.0;
  std::string channel;  // "ee" / "emu" for msw, empty otherwise
  double p_theory = 0.0;
  double p_exact = 0.0;
  double p_sampled = 0.0;
  double stderr_sampled = 0.0;  // sqrt(p_sampled (1 - p_sampled) / shots)
};

struct ScanResult {
  Scenario scenario = Scenario::kEarth;
  std::int64_t shots = 0;
  std::vector<ScanRow> rows;  // msw: two rows per energy, "ee" then "emu"
  std::vector<double> infidelities;  // msw optimized mode, one per energy
  std::vector<std::string> circuit_dumps;  // one per energy when dump_circuit
  std::optional<CompileReport> compile_report;  // slab/earth, first grid point
};

/// Per-point work runs concurrently under kParallel; rows stay in grid order
/// and are identical to kSerial. Sampling at grid index i uses stream i.
ScanResult run_scan(const ScanConfig& config, Execution exec = Execution::kParallel);

MixingModel mixing_model(const ScanConfig& config);
SlabProfile scenario_profile(const ScanConfig& config);

std::string csv_text(const ScanResult& result);
/// Writes csv_text to `path`; throws IoError mentioning the path.
void emit_csv(const ScanResult& result, const std::string& path);

/// Standalone SVG: theory polylines, sampled markers with +-1 stderr bars.
/// Throws DomainError with fewer than two energies.
std::string svg_text(const ScanResult& result);
void emit_plot(const ScanResult& result, const std::string& path);

}  // namespace nuqsim
