#pragma once

// Builders that turn oscillation scenarios into circuits.

#include <array>

#include "nuqsim/physics.hpp"
#include "nuqsim/qsim.hpp"

namespace nuqsim {

/// Qubit roles in the two-qubit MSW circuit.
inline constexpr int kAncillaQubit = 0;  // q_A, most significant
inline constexpr int kEncodedQubit = 1;  // q_B, carries the flavor

/// X to prepare nu_mu, then RY(-2 theta_m), RZ(phi), RY(2 theta_m) per layer,
/// then a measurement. With `compile` the virtual-Z pass is applied.
Circuit build_slab_circuit(const MixingModel& model, const SlabProfile& profile, double energy_gev, bool compile);
Circuit build_slab_circuit(const OscParams& p, const SlabProfile& profile, double energy_gev, bool compile);

/// Slab circuit over the mantle-core-mantle profile (default: earth_profile()).
Circuit build_earth_circuit(const MixingModel& model, double energy_gev, bool compile,
                            const SlabProfile& profile = earth_profile());
Circuit build_earth_circuit(const OscParams& p, double energy_gev, bool compile);

/// Matrices for one MSW point. All entries are real.
struct DilationSet {
  Mat2 w_vac;
  Mat2 w_mat;
  Mat2 q;      // w_vac * w_mat
  Mat2 sqrt_complement;  // sqrt(I - Q^2)
  Mat4 u2q;    // [[Q, S], [S, -Q]] in blocks indexed by q_A
  double theta = 0.0;
  double theta_m = 0.0;
};

/// Doubly stochastic mixing-weight matrix [[c^2, s^2], [s^2, c^2]].
Mat2 mixing_weights(double theta);

/// Builds the dilation from vacuum and matter angles. Throws DomainError when
/// an eigenvalue of Q exceeds 1 in magnitude by more than 1e-12 or the
/// assembled unitary is not orthogonal.
DilationSet build_dilation(double theta, double theta_m);
DilationSet build_dilation(const OscParams& p, const MatterLayer& production_layer, double energy_gev);

/// u2q applied as one explicit two-qubit gate, then q_B measured.
Circuit build_dilation_circuit(const DilationSet& d);

struct SynthesisParams {
  std::array<double, 3> alpha{};  // RY angles on q_A
  std::array<double, 3> beta{};   // RY angles on q_B

  /// Flat order used by the optimizer: alpha1..3, beta1..3.
  std::array<double, 6> flat() const { return {alpha[0], alpha[1], alpha[2], beta[0], beta[1], beta[2]}; }
  static SynthesisParams from_flat(const std::array<double, 6>& x) {
    return {{x[0], x[1], x[2]}, {x[3], x[4], x[5]}};
  }
};

/// (RY(a1) x RY(b1)), CX(A->B), (RY(a2) x RY(b2)), CX(A->B), (RY(a3) x RY(b3)), measure q_B.
Circuit build_msw_circuit(const SynthesisParams& sp);

}  // namespace nuqsim
