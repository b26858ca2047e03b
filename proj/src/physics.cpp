#include "nuqsim/physics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nuqsim/errors.hpp"

namespace nuqsim {

namespace {

PhysConstants derive_constants() {
  PhysConstants k{};
  k.gf_gev2 = 1.1663787e-5;
  // Atomic mass unit: rho / m_n then counts nucleons per unit volume (N_A per gram).
  k.mn_gev = 0.93149410242;
  k.hbarc_gev_cm = 1.973269804e-14;
  k.grams_to_gev = 1.0 / 1.78266192e-24;

  // Nucleon number density per (g/cm^3), in GeV^3.
  const double nucleons_per_rho = k.grams_to_gev / k.mn_gev * std::pow(k.hbarc_gev_cm, 3);
  // A [GeV^2] per (Ye rho E[GeV]) -> eV^2.
  k.matter_factor = 2.0 * std::sqrt(2.0) * k.gf_gev2 * nucleons_per_rho * 1e18;

  // dm2 [eV^2] * L [km] / (2 E [GeV]): eV^2 -> GeV^2 is 1e-18, km -> GeV^-1 is 1e5 / hbarc.
  k.phase_factor = 1e-18 * 1e5 / k.hbarc_gev_cm / 2.0;

  if (std::abs(k.matter_factor / 1.5265e-4 - 1.0) > 1e-3)
    throw std::logic_error("matter factor self-check failed: " + std::to_string(k.matter_factor));
  if (std::abs(k.phase_factor / 2.5339 - 1.0) > 1e-3)
    throw std::logic_error("phase factor self-check failed: " + std::to_string(k.phase_factor));
  return k;
}

void require_energy(double energy_gev) {
  if (!(energy_gev > 0.0) || !std::isfinite(energy_gev))
    throw DomainError("energy must be positive, got " + std::to_string(energy_gev));
}

}  // namespace

const PhysConstants& constants() {
  static const PhysConstants k = derive_constants();
  return k;
}

std::vector<MatterLayer> SlabProfile::expanded() const {
  if (!period_count) return layers;
  std::vector<MatterLayer> out;
  out.reserve(layers.size() * static_cast<std::size_t>(*period_count));
  for (int i = 0; i < *period_count; ++i) out.insert(out.end(), layers.begin(), layers.end());
  return out;
}

void SlabProfile::validate() const {
  if (layers.empty()) throw DomainError("slab profile has no layers");
  if (period_count) {
    if (*period_count < 1) throw DomainError("period count must be at least 1");
    if (layers.size() % 2 != 0) throw DomainError("a periodic profile needs an even number of layers per period");
  }
  for (const auto& l : layers) nuqsim::validate(l);
}

void validate(const OscParams& p) {
  if (!(p.theta >= 0.0 && p.theta <= M_PI / 2)) throw DomainError("mixing angle must lie in [0, pi/2]");
  if (!(p.dm2 > 0.0) || !std::isfinite(p.dm2)) throw DomainError("dm2 must be positive");
}

void validate(const MatterLayer& layer) {
  if (!(layer.rho >= 0.0) || !std::isfinite(layer.rho)) throw DomainError("density must be non-negative");
  if (!(layer.ye > 0.0 && layer.ye <= 1.0)) throw DomainError("Ye must lie in (0, 1]");
  if (!(layer.length_km >= 0.0) || !std::isfinite(layer.length_km))
    throw DomainError("layer length must be non-negative");
}

double matter_potential(const MatterLayer& layer, double energy_gev) {
  require_energy(energy_gev);
  validate(layer);
  return constants().matter_factor * layer.ye * layer.rho * energy_gev;
}

EffectiveParams effective_params_at_beta(const OscParams& p, double beta) {
  validate(p);
  if (!std::isfinite(beta)) throw DomainError("beta must be finite");
  const double c2 = std::cos(2 * p.theta);
  const double s2 = std::sin(2 * p.theta);
  const double x = c2 - beta;
  const double d = std::hypot(x, s2);
  if (d == 0.0) throw DomainError("effective mixing angle undefined at beta = cos 2theta with sin 2theta = 0");
  EffectiveParams e;
  e.beta = beta;
  e.a_ev2 = beta * p.dm2;
  e.theta_m = 0.5 * std::atan2(s2, x);
  e.dm2_m = p.dm2 * d;
  return e;
}

EffectiveParams effective_params(const OscParams& p, const MatterLayer& layer, double energy_gev) {
  validate(p);
  const double a = matter_potential(layer, energy_gev);
  EffectiveParams e = effective_params_at_beta(p, a / p.dm2);
  e.a_ev2 = a;
  return e;
}

double phase(double dm2_m, double length_km, double energy_gev) {
  require_energy(energy_gev);
  if (!(length_km >= 0.0)) throw DomainError("length must be non-negative");
  return constants().phase_factor * dm2_m * length_km / energy_gev;
}

Mat2 mixing_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2 m;
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = s;
  m(1, 1) = c;
  return m;
}

Mat2 phase_matrix(double phi) {
  Mat2 m;
  m(0, 0) = std::polar(1.0, -phi / 2);
  m(1, 1) = std::polar(1.0, phi / 2);
  return m;
}

Mat2 layer_propagator(double theta_m, double phi) {
  const Mat2 mix = mixing_matrix(theta_m);
  return mix * phase_matrix(phi) * adjoint(mix);
}

double prob_constant_density(const OscParams& p, const MatterLayer& layer, double energy_gev, double length_km) {
  const EffectiveParams e = effective_params(p, layer, energy_gev);
  const double phi = phase(e.dm2_m, length_km, energy_gev);
  const double s2m = std::sin(2 * e.theta_m);
  const double sh = std::sin(phi / 2);
  return s2m * s2m * sh * sh;
}

double atmospheric_effective_angle(double theta23, double theta13_m) {
  return std::asin(std::sin(theta23) * std::sin(2 * theta13_m));
}

LayerMixing layer_mixing(const MixingModel& model, const MatterLayer& layer, double energy_gev) {
  const EffectiveParams e = effective_params(model.osc, layer, energy_gev);
  LayerMixing m;
  m.dm2_m = e.dm2_m;
  m.theta_m =
      model.angle_model == AngleModel::kAtmospheric ? atmospheric_effective_angle(model.theta23, e.theta_m) : e.theta_m;
  m.phi = phase(e.dm2_m, layer.length_km, energy_gev);
  return m;
}

Mat2 slab_propagator(const MixingModel& model, const SlabProfile& profile, double energy_gev) {
  profile.validate();
  Mat2 u = Mat2::identity();
  for (const auto& layer : profile.expanded()) {
    const LayerMixing m = layer_mixing(model, layer, energy_gev);
    u = layer_propagator(m.theta_m, m.phi) * u;
  }
  return u;
}

double prob_slab(const MixingModel& model, const SlabProfile& profile, double energy_gev, Flavor initial) {
  const Mat2 u = slab_propagator(model, profile, energy_gev);
  return std::norm(u(0, static_cast<std::size_t>(initial)));
}

double prob_slab(const OscParams& p, const SlabProfile& profile, double energy_gev, Flavor initial) {
  return prob_slab(MixingModel{p, AngleModel::kTwoFlavor, M_PI / 4}, profile, energy_gev, initial);
}

MswProbabilities prob_msw_adiabatic(const OscParams& p, const MatterLayer& production_layer, double energy_gev) {
  const EffectiveParams e = effective_params(p, production_layer, energy_gev);
  MswProbabilities r;
  r.p_ee = 0.5 * (1.0 + std::cos(2 * p.theta) * std::cos(2 * e.theta_m));
  r.p_emu = 1.0 - r.p_ee;
  return r;
}

SlabProfile earth_profile(double mantle_rho, double mantle_km, double core_rho, double core_km, double ye) {
  SlabProfile p;
  p.layers = {{mantle_rho, ye, mantle_km}, {core_rho, ye, core_km}, {mantle_rho, ye, mantle_km}};
  return p;
}

SlabProfile periodic_profile(double rho1, double dx1_km, double rho2, double dx2_km, int periods, double ye) {
  SlabProfile p;
  p.layers = {{rho1, ye, dx1_km}, {rho2, ye, dx2_km}};
  p.period_count = periods;
  return p;
}

}  // namespace nuqsim
