#include "nuqsim/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>

#include "nuqsim/circuits.hpp"
#include "nuqsim/errors.hpp"
#include "nuqsim/optim.hpp"
#include "nuqsim/qsim.hpp"

namespace nuqsim {

namespace {

struct PointOutput {
  std::vector<ScanRow> rows;
  double infidelity = 0.0;
  std::string dump;
};

ScanRow make_row(double energy, const char* channel, double theory, double exact, double sampled,
                 std::int64_t shots) {
  ScanRow r;
  r.energy_gev = energy;
  r.channel = channel;
  r.p_theory = theory;
  r.p_exact = exact;
  r.p_sampled = sampled;
  r.stderr_sampled = std::sqrt(sampled * (1.0 - sampled) / static_cast<double>(shots));
  return r;
}

double zero_fraction(const ShotResult& shots) {
  return static_cast<double>(shots.count("0")) / static_cast<double>(shots.shots);
}

PointOutput slab_point(const ScanConfig& cfg, const MixingModel& model, const SlabProfile& profile, double energy,
                       std::size_t index) {
  const Circuit c = cfg.scenario == Scenario::kEarth ? build_earth_circuit(model, energy, cfg.compile, profile)
                                                     : build_slab_circuit(model, profile, energy, cfg.compile);
  const StateVector state = execute(c);
  const double exact = probabilities(state, 0).first;
  const double theory = prob_slab(model, profile, energy, Flavor::kMuon);
  const ShotResult shots = sample(state, 0, cfg.shots, cfg.seed, index);
  PointOutput out;
  out.rows.push_back(make_row(energy, "", theory, exact, zero_fraction(shots), cfg.shots));
  if (cfg.dump_circuit) out.dump = dump_circuit(c);
  return out;
}

PointOutput msw_point(const ScanConfig& cfg, const MixingModel& model, double energy, std::size_t index) {
  const MatterLayer production{cfg.physics.production_rho, cfg.physics.ye, 0.0};
  const DilationSet d = build_dilation(model.osc, production, energy);
  PointOutput out;
  std::optional<Circuit> c;
  if (cfg.synthesis == Synthesis::kExact) {
    c.emplace(build_dilation_circuit(d));
  } else {
    FidelityProblem problem;
    problem.target = d.u2q;
    problem.restarts = cfg.optimizer_restarts;
    problem.tol_infidelity = cfg.optimizer_tol;
    const OptimResult fit = optimize(problem, cfg.seed, Execution::kSerial);
    out.infidelity = fit.infidelity;
    c.emplace(build_msw_circuit(fit.params));
  }
  const StateVector state = execute(*c);
  const double exact = probabilities(state, kEncodedQubit).first;
  const MswProbabilities theory = prob_msw_adiabatic(model.osc, production, energy);
  const double sampled = zero_fraction(sample(state, kEncodedQubit, cfg.shots, cfg.seed, index));
  out.rows.push_back(make_row(energy, "ee", theory.p_ee, exact, sampled, cfg.shots));
  out.rows.push_back(make_row(energy, "emu", theory.p_emu, 1.0 - exact, 1.0 - sampled, cfg.shots));
  if (cfg.dump_circuit) out.dump = dump_circuit(*c);
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kSlab: return "slab";
    case Scenario::kEarth: return "earth";
    case Scenario::kMsw: return "msw";
  }
  return "?";
}

Scenario parse_scenario(const std::string& name) {
  if (name == "slab") return Scenario::kSlab;
  if (name == "earth") return Scenario::kEarth;
  if (name == "msw") return Scenario::kMsw;
  throw ConfigError("scenario", "expected slab, earth or msw, got '" + name + "'");
}

std::vector<double> EnergyGrid::values() const {
  std::vector<double> out;
  if (points < 1) return out;
  out.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    out.push_back(min_gev);
    return out;
  }
  const double step = (max_gev - min_gev) / (points - 1);
  for (int i = 0; i < points; ++i) out.push_back(i == points - 1 ? max_gev : min_gev + step * i);
  return out;
}

EnergyGrid EnergyGrid::parse(const std::string& text) {
  EnergyGrid g;
  std::istringstream in(text);
  char c1 = 0, c2 = 0;
  if (!(in >> g.min_gev >> c1 >> g.max_gev >> c2 >> g.points) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
    throw ConfigError("energies", "expected min:max:n, got '" + text + "'");
  return g;
}

EnergyGrid ScanConfig::default_grid(Scenario s) {
  if (s == Scenario::kMsw) return {0.001, 0.05, 50};
  return {1.0, 25.0, 50};
}

ScanConfig ScanConfig::defaults(Scenario s) {
  ScanConfig c;
  c.scenario = s;
  c.grid = default_grid(s);
  return c;
}

void ScanConfig::validate() const {
  const auto& p = physics;
  if (grid.points < 1) throw ConfigError("energies.points", "must be at least 1");
  if (!(grid.min_gev > 0.0) || !std::isfinite(grid.max_gev))
    throw ConfigError("energies.min", "energies must be positive");
  if (grid.points > 1 && !(grid.max_gev > grid.min_gev))
    throw ConfigError("energies.max", "must exceed energies.min for more than one point");
  if (shots < 1) throw ConfigError("shots", "must be at least 1");
  if (optimizer_restarts < 1) throw ConfigError("msw.restarts", "must be at least 1");
  if (!(optimizer_tol >= 0.0)) throw ConfigError("msw.tol_infidelity", "must be non-negative");
  for (auto [name, deg] : {std::pair{"physics.theta12_deg", p.theta12_deg}, std::pair{"physics.theta13_deg", p.theta13_deg},
                           std::pair{"physics.theta23_deg", p.theta23_deg}})
    if (!(deg >= 0.0 && deg <= 90.0)) throw ConfigError(name, "must lie in [0, 90] degrees");
  if (!(p.dm2_31 > 0.0)) throw ConfigError("physics.dm2_31", "must be positive");
  if (!(p.dm2_21 > 0.0)) throw ConfigError("physics.dm2_21", "must be positive");
  if (!(p.ye > 0.0 && p.ye <= 1.0)) throw ConfigError("physics.ye", "must lie in (0, 1]");
  for (auto [name, v] : {std::pair{"slab.rho1", p.slab_rho1}, std::pair{"slab.rho2", p.slab_rho2},
                         std::pair{"slab.dx1_km", p.slab_dx1_km}, std::pair{"slab.dx2_km", p.slab_dx2_km},
                         std::pair{"earth.mantle_rho", p.mantle_rho}, std::pair{"earth.mantle_km", p.mantle_km},
                         std::pair{"earth.core_rho", p.core_rho}, std::pair{"earth.core_km", p.core_km},
                         std::pair{"msw.production_rho", p.production_rho}})
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(name, "must be non-negative");
  if (p.slab_periods < 1) throw ConfigError("slab.periods", "must be at least 1");
}

MixingModel mixing_model(const ScanConfig& config) {
  const auto& p = config.physics;
  if (config.scenario == Scenario::kMsw) return {{deg(p.theta12_deg), p.dm2_21}, AngleModel::kTwoFlavor, M_PI / 4};
  return {{deg(p.theta13_deg), p.dm2_31}, p.angle_model, deg(p.theta23_deg)};
}

SlabProfile scenario_profile(const ScanConfig& config) {
  const auto& p = config.physics;
  if (config.scenario == Scenario::kSlab)
    return periodic_profile(p.slab_rho1, p.slab_dx1_km, p.slab_rho2, p.slab_dx2_km, p.slab_periods, p.ye);
  return earth_profile(p.mantle_rho, p.mantle_km, p.core_rho, p.core_km, p.ye);
}

ScanResult run_scan(const ScanConfig& config, Execution exec) {
  config.validate();
  const MixingModel model = mixing_model(config);
  const SlabProfile profile = scenario_profile(config);
  const std::vector<double> energies = config.grid.values();
  const auto n = static_cast<std::ptrdiff_t>(energies.size());

  std::vector<PointOutput> points(energies.size());
  std::vector<std::exception_ptr> errors(energies.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::kParallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      points[k] = config.scenario == Scenario::kMsw ? msw_point(config, model, energies[k], k)
                                                    : slab_point(config, model, profile, energies[k], k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ScanResult result;
  result.scenario = config.scenario;
  result.shots = config.shots;
  for (auto& p : points) {
    for (auto& r : p.rows) result.rows.push_back(std::move(r));
    if (config.scenario == Scenario::kMsw && config.synthesis == Synthesis::kOptimized)
      result.infidelities.push_back(p.infidelity);
    if (config.dump_circuit) result.circuit_dumps.push_back(std::move(p.dump));
  }
  if (config.scenario != Scenario::kMsw && !energies.empty()) {
    const Circuit raw = config.scenario == Scenario::kEarth
                            ? build_earth_circuit(model, energies.front(), false, profile)
                            : build_slab_circuit(model, profile, energies.front(), false);
    result.compile_report = virtual_z_pass(raw).second;
  }
  return result;
}

std::string csv_text(const ScanResult& result) {
  const bool msw = result.scenario == Scenario::kMsw;
  std::string out = msw ? "energy_gev,channel,p_theory,p_exact,p_sampled,stderr\n"
                        : "energy_gev,p_theory,p_exact,p_sampled,stderr\n";
  for (const auto& r : result.rows) {
    out += num(r.energy_gev);
    if (msw) out += "," + r.channel;
    out += "," + num(r.p_theory) + "," + num(r.p_exact) + "," + num(r.p_sampled) + "," + num(r.stderr_sampled) + "\n";
  }
  return out;
}

void emit_csv(const ScanResult& result, const std::string& path) { write_file(path, csv_text(result)); }

std::string svg_text(const ScanResult& result) {
  std::vector<std::string> channels;
  for (const auto& r : result.rows)
    if (std::find(channels.begin(), channels.end(), r.channel) == channels.end()) channels.push_back(r.channel);
  double emin = 0.0, emax = 0.0;
  std::size_t distinct = 0;
  for (const auto& r : result.rows) {
    if (r.channel != result.rows.front().channel) continue;
    if (distinct == 0) emin = emax = r.energy_gev;
    emin = std::min(emin, r.energy_gev);
    emax = std::max(emax, r.energy_gev);
    ++distinct;
  }
  if (distinct < 2 || !(emax > emin)) throw DomainError("a plot needs at least two distinct energies");

  constexpr double kW = 640, kH = 420, kL = 70, kR = 20, kT = 40, kB = 60;
  const auto px = [&](double e) { return kL + (e - emin) / (emax - emin) * (kW - kL - kR); };
  const auto py = [&](double p) { return kH - kB - p * (kH - kT - kB); };
  const char* colors[] = {"#1f4e9c", "#c0392b"};

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
    << kW << ' ' << kH << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
    << scenario_name(result.scenario) << " scan (" << result.shots << " shots)</text>\n";
  // axes and ticks
  s << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  s << "<line x1=\"" << fixed(kL) << "\" y1=\"" << fixed(py(0)) << "\" x2=\"" << fixed(kW - kR) << "\" y2=\""
    << fixed(py(0)) << "\"/>\n";
  s << "<line x1=\"" << fixed(kL) << "\" y1=\"" << fixed(py(0)) << "\" x2=\"" << fixed(kL) << "\" y2=\"" << fixed(py(1))
    << "\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double p = i / 5.0;
    s << "<line x1=\"" << fixed(kL - 5) << "\" y1=\"" << fixed(py(p)) << "\" x2=\"" << fixed(kL) << "\" y2=\""
      << fixed(py(p)) << "\"/>\n";
    const double e = emin + (emax - emin) * i / 5.0;
    s << "<line x1=\"" << fixed(px(e)) << "\" y1=\"" << fixed(py(0)) << "\" x2=\"" << fixed(px(e)) << "\" y2=\""
      << fixed(py(0) + 5) << "\"/>\n";
  }
  s << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double p = i / 5.0;
    const double e = emin + (emax - emin) * i / 5.0;
    char label[32];
    std::snprintf(label, sizeof label, "%.1f", p);
    s << "<text x=\"" << fixed(kL - 8) << "\" y=\"" << fixed(py(p) + 4) << "\" text-anchor=\"end\">" << label
      << "</text>\n";
    std::snprintf(label, sizeof label, "%.4g", e);
    s << "<text x=\"" << fixed(px(e)) << "\" y=\"" << fixed(py(0) + 18) << "\" text-anchor=\"middle\">" << label
      << "</text>\n";
  }
  s << "</g>\n";
  s << "<text x=\"" << fixed((kL + kW - kR) / 2) << "\" y=\"" << fixed(kH - 15)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">Energy [GeV]</text>\n";
  s << "<text x=\"18\" y=\"" << fixed((kT + kH - kB) / 2) << "\" transform=\"rotate(-90 18 " << fixed((kT + kH - kB) / 2)
    << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">Probability</text>\n";

  for (std::size_t ci = 0; ci < channels.size(); ++ci) {
    const char* color = colors[ci % 2];
    const std::string& ch = channels[ci];
    s << "<polyline class=\"theory\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& r : result.rows) {
      if (r.channel != ch) continue;
      s << (first ? "" : " ") << fixed(px(r.energy_gev)) << ',' << fixed(py(r.p_theory));
      first = false;
    }
    s << "\"/>\n<g class=\"sampled\" stroke=\"" << color << "\" fill=\"" << color << "\">\n";
    for (const auto& r : result.rows) {
      if (r.channel != ch) continue;
      const double x = px(r.energy_gev);
      s << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(py(r.p_sampled - r.stderr_sampled)) << "\" x2=\""
        << fixed(x) << "\" y2=\"" << fixed(py(r.p_sampled + r.stderr_sampled)) << "\"/>";
      s << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(py(r.p_sampled)) << "\" r=\"2.5\"/>\n";
    }
    s << "</g>\n";
    if (!ch.empty())
      s << "<text x=\"" << fixed(kW - kR - 10) << "\" y=\"" << fixed(kT + 14 + 16 * ci)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">P_" << ch
        << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void emit_plot(const ScanResult& result, const std::string& path) { write_file(path, svg_text(result)); }

}  // namespace nuqsim
