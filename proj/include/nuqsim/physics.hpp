#pragma once

// Two-flavor oscillation physics in matter and the analytic reference
// probabilities that circuit results are checked against.
//
// Units: energies in GeV, mass splittings in eV^2, densities in g/cm^3,
// lengths in km, angles in radians. Flavor basis: nu_e = |0>, nu_mu = |1>.

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nuqsim/linalg.hpp"

namespace nuqsim {

/// Unit-conversion constants, derived once from G_F, the nucleon mass and hbar*c.
struct PhysConstants {
  double gf_gev2;       // Fermi constant [GeV^-2]
  double mn_gev;        // nucleon mass [GeV]
  double hbarc_gev_cm;  // hbar*c [GeV cm]
  double grams_to_gev;  // 1 g in GeV/c^2
  /// A = matter_factor * Ye * rho * E  [eV^2 per (g/cm^3 * GeV)]
  double matter_factor;
  /// phi = phase_factor * dm2 * L / E  [rad GeV / (eV^2 km)]
  double phase_factor;
};

const PhysConstants& constants();

struct OscParams {
  double theta = 0.0;  // vacuum mixing angle, [0, pi/2]
  double dm2 = 0.0;    // eV^2, > 0
};

struct MatterLayer {
  double rho = 0.0;  // g/cm^3
  double ye = 0.5;
  double length_km = 0.0;
};

/// Ordered constant-density layers. When period_count is set the layers hold
/// one period (an even number of layers) repeated period_count times.
struct SlabProfile {
  std::vector<MatterLayer> layers;
  std::optional<int> period_count;

  /// The full ordered layer list with the period expanded.
  std::vector<MatterLayer> expanded() const;
  void validate() const;
};

struct EffectiveParams {
  double theta_m = 0.0;
  double dm2_m = 0.0;
  double beta = 0.0;
  double a_ev2 = 0.0;
};

enum class Flavor { kElectron = 0, kMuon = 1 };

void validate(const OscParams& p);
void validate(const MatterLayer& layer);

/// A = 2 sqrt(2) G_F Ye rho E / m_n in eV^2. Throws DomainError for E <= 0.
double matter_potential(const MatterLayer& layer, double energy_gev);

/// theta_m and dm2_m at a given beta = A/dm2. theta_m is placed in [0, pi/2]
/// with cos 2theta_m carrying the sign of (cos 2theta - beta). Throws
/// DomainError at the degenerate point beta = cos 2theta with sin 2theta = 0.
EffectiveParams effective_params_at_beta(const OscParams& p, double beta);

EffectiveParams effective_params(const OscParams& p, const MatterLayer& layer, double energy_gev);

/// phi = dm2_m * L / (2E) in natural units.
double phase(double dm2_m, double length_km, double energy_gev);

/// Rotation between flavor and mass bases, [[c, -s], [s, c]]; equal to RY(2 theta).
Mat2 mixing_matrix(double theta);

/// diag(exp(-i phi/2), exp(i phi/2)); equal to RZ(phi).
Mat2 phase_matrix(double phi);

/// M(theta_m) P(phi) M(theta_m)^dagger for one constant-density stretch.
Mat2 layer_propagator(double theta_m, double phi);

/// P(nu_mu -> nu_e) = sin^2 2theta_m sin^2(phi/2) over `length_km` of `layer`.
double prob_constant_density(const OscParams& p, const MatterLayer& layer, double energy_gev, double length_km);

/// How the per-layer angle and splitting are chosen.
enum class AngleModel {
  /// theta_m and dm2_m from effective_params applied to OscParams.theta.
  kTwoFlavor,
  /// theta_m = asin(sin theta23 * sin 2theta13m) with theta13m from
  /// effective_params(theta13); dm2_m from the same theta13 evaluation.
  kAtmospheric,
};

struct MixingModel {
  OscParams osc;  // theta is theta13 in the atmospheric model
  AngleModel angle_model = AngleModel::kTwoFlavor;
  double theta23 = M_PI / 4;
};

struct LayerMixing {
  double theta_m = 0.0;
  double dm2_m = 0.0;
  double phi = 0.0;
};

LayerMixing layer_mixing(const MixingModel& model, const MatterLayer& layer, double energy_gev);

/// asin(sin theta23 * sin 2theta13m).
double atmospheric_effective_angle(double theta23, double theta13_m);

/// Ordered product of layer propagators (first layer rightmost).
Mat2 slab_propagator(const MixingModel& model, const SlabProfile& profile, double energy_gev);

/// P(initial -> nu_e) through the profile.
double prob_slab(const MixingModel& model, const SlabProfile& profile, double energy_gev,
                 Flavor initial = Flavor::kMuon);
double prob_slab(const OscParams& p, const SlabProfile& profile, double energy_gev, Flavor initial = Flavor::kMuon);

struct MswProbabilities {
  double p_ee = 0.0;
  double p_emu = 0.0;
};

/// Adiabatic survival P_ee = (1 + cos 2theta cos 2theta_m) / 2 with theta_m
/// taken at the production layer.
MswProbabilities prob_msw_adiabatic(const OscParams& p, const MatterLayer& production_layer, double energy_gev);

/// The three-layer Earth model: mantle, core, mantle.
SlabProfile earth_profile(double mantle_rho = 5.0, double mantle_km = 5000.0, double core_rho = 10.0,
                          double core_km = 2500.0, double ye = 0.5);

/// Alternating two-density slabs: `periods` repetitions of (rho1, dx1), (rho2, dx2).
SlabProfile periodic_profile(double rho1, double dx1_km, double rho2, double dx2_km, int periods, double ye = 0.5);

inline double deg(double degrees) { return degrees * M_PI / 180.0; }

}  // namespace nuqsim
