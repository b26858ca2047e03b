#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nuqsim/errors.hpp"
#include "nuqsim/scan.hpp"

namespace nuqsim {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
  }
}

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

void read_number(const json& obj, const std::string& path, const char* key, double& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
  out = v.get<double>();
}

template <typename Int>
void read_integer(const json& obj, const std::string& path, const char* key, Int& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
  if constexpr (std::is_unsigned_v<Int>) {
    if (v.is_number_unsigned() || v.get<std::int64_t>() >= 0) {
      out = v.get<Int>();
      return;
    }
    throw ConfigError(join(path, key), "expected a non-negative integer");
  } else {
    out = v.get<Int>();
  }
}

void read_bool(const json& obj, const std::string& path, const char* key, bool& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(join(path, key), "expected true or false");
  out = v.get<bool>();
}

void read_string(const json& obj, const std::string& path, const char* key, std::string& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
  out = v.get<std::string>();
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

ScanConfig load_config(const std::string& json_text, Scenario fallback) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "JSON syntax error at line " + std::to_string(line_of(json_text, e.byte)) + ": " + e.what());
  }
  reject_unknown(doc, "",
                 {"scenario", "energies", "shots", "seed", "compile", "synthesis", "angle_model", "dump_circuit",
                  "physics", "slab", "earth", "msw", "output"});

  Scenario scenario = fallback;
  if (doc.contains("scenario")) {
    std::string name;
    read_string(doc, "", "scenario", name);
    scenario = parse_scenario(name);
  }
  ScanConfig cfg = ScanConfig::defaults(scenario);

  if (doc.contains("energies")) {
    const json& e = doc.at("energies");
    if (e.is_string()) {
      cfg.grid = EnergyGrid::parse(e.get<std::string>());
    } else {
      reject_unknown(e, "energies", {"min", "max", "points"});
      read_number(e, "energies", "min", cfg.grid.min_gev);
      read_number(e, "energies", "max", cfg.grid.max_gev);
      read_integer(e, "energies", "points", cfg.grid.points);
    }
  }
  read_integer(doc, "", "shots", cfg.shots);
  read_integer(doc, "", "seed", cfg.seed);
  read_bool(doc, "", "compile", cfg.compile);
  read_bool(doc, "", "dump_circuit", cfg.dump_circuit);
  if (doc.contains("synthesis")) {
    std::string s;
    read_string(doc, "", "synthesis", s);
    if (s == "exact") cfg.synthesis = Synthesis::kExact;
    else if (s == "optimized") cfg.synthesis = Synthesis::kOptimized;
    else throw ConfigError("synthesis", "expected exact or optimized, got '" + s + "'");
  }
  if (doc.contains("angle_model")) {
    std::string s;
    read_string(doc, "", "angle_model", s);
    if (s == "atmospheric") cfg.physics.angle_model = AngleModel::kAtmospheric;
    else if (s == "two_flavor") cfg.physics.angle_model = AngleModel::kTwoFlavor;
    else throw ConfigError("angle_model", "expected atmospheric or two_flavor, got '" + s + "'");
  }

  auto& p = cfg.physics;
  if (doc.contains("physics")) {
    const json& o = doc.at("physics");
    reject_unknown(o, "physics", {"theta12_deg", "theta13_deg", "theta23_deg", "dm2_31", "dm2_21", "ye"});
    read_number(o, "physics", "theta12_deg", p.theta12_deg);
    read_number(o, "physics", "theta13_deg", p.theta13_deg);
    read_number(o, "physics", "theta23_deg", p.theta23_deg);
    read_number(o, "physics", "dm2_31", p.dm2_31);
    read_number(o, "physics", "dm2_21", p.dm2_21);
    read_number(o, "physics", "ye", p.ye);
  }
  if (doc.contains("slab")) {
    const json& o = doc.at("slab");
    reject_unknown(o, "slab", {"rho1", "dx1_km", "rho2", "dx2_km", "periods"});
    read_number(o, "slab", "rho1", p.slab_rho1);
    read_number(o, "slab", "dx1_km", p.slab_dx1_km);
    read_number(o, "slab", "rho2", p.slab_rho2);
    read_number(o, "slab", "dx2_km", p.slab_dx2_km);
    read_integer(o, "slab", "periods", p.slab_periods);
  }
  if (doc.contains("earth")) {
    const json& o = doc.at("earth");
    reject_unknown(o, "earth", {"mantle_rho", "mantle_km", "core_rho", "core_km"});
    read_number(o, "earth", "mantle_rho", p.mantle_rho);
    read_number(o, "earth", "mantle_km", p.mantle_km);
    read_number(o, "earth", "core_rho", p.core_rho);
    read_number(o, "earth", "core_km", p.core_km);
  }
  if (doc.contains("msw")) {
    const json& o = doc.at("msw");
    reject_unknown(o, "msw", {"production_rho", "restarts", "tol_infidelity"});
    read_number(o, "msw", "production_rho", p.production_rho);
    read_integer(o, "msw", "restarts", cfg.optimizer_restarts);
    read_number(o, "msw", "tol_infidelity", cfg.optimizer_tol);
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    reject_unknown(o, "output", {"csv", "svg"});
    read_string(o, "output", "csv", cfg.csv_path);
    read_string(o, "output", "svg", cfg.svg_path);
  }
  cfg.validate();
  return cfg;
}

ScanConfig load_config_file(const std::string& path, Scenario fallback) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str(), fallback);
}

}  // namespace nuqsim
