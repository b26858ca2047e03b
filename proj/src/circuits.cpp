#include "nuqsim/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nuqsim/compile.hpp"
#include "nuqsim/errors.hpp"

namespace nuqsim {

Circuit build_slab_circuit(const MixingModel& model, const SlabProfile& profile, double energy_gev, bool compile) {
  profile.validate();
  std::vector<GateOp> ops{GateOp::x(0)};
  for (const auto& layer : profile.expanded()) {
    const LayerMixing m = layer_mixing(model, layer, energy_gev);
    ops.push_back(GateOp::ry(-2 * m.theta_m, 0));
    ops.push_back(GateOp::rz(m.phi, 0));
    ops.push_back(GateOp::ry(2 * m.theta_m, 0));
  }
  ops.push_back(GateOp::measure(0));
  Circuit c(1, std::move(ops));
  if (!compile) return c;
  return virtual_z_pass(c).first;
}

Circuit build_slab_circuit(const OscParams& p, const SlabProfile& profile, double energy_gev, bool compile) {
  return build_slab_circuit(MixingModel{p, AngleModel::kTwoFlavor, M_PI / 4}, profile, energy_gev, compile);
}

Circuit build_earth_circuit(const MixingModel& model, double energy_gev, bool compile, const SlabProfile& profile) {
  if (profile.expanded().size() != 3) throw DomainError("earth profile must have three layers");
  return build_slab_circuit(model, profile, energy_gev, compile);
}

Circuit build_earth_circuit(const OscParams& p, double energy_gev, bool compile) {
  return build_earth_circuit(MixingModel{p, AngleModel::kTwoFlavor, M_PI / 4}, energy_gev, compile);
}

Mat2 mixing_weights(double theta) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  Mat2 w;
  w(0, 0) = c2;
  w(0, 1) = s2;
  w(1, 0) = s2;
  w(1, 1) = c2;
  return w;
}

DilationSet build_dilation(double theta, double theta_m) {
  DilationSet d;
  d.theta = theta;
  d.theta_m = theta_m;
  d.w_vac = mixing_weights(theta);
  d.w_mat = mixing_weights(theta_m);
  d.q = d.w_vac * d.w_mat;

  // Q = a I + b X has eigenvectors (1, 1)/sqrt2 -> a + b = 1 and (1, -1)/sqrt2 -> a - b.
  const double lambda = d.q(0, 0).real() - d.q(0, 1).real();
  if (std::abs(lambda) > 1.0 + 1e-12)
    throw DomainError("eigenvalue of Q outside [-1, 1]: " + std::to_string(lambda));
  const double s = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));
  d.sqrt_complement(0, 0) = s / 2;
  d.sqrt_complement(0, 1) = -s / 2;
  d.sqrt_complement(1, 0) = -s / 2;
  d.sqrt_complement(1, 1) = s / 2;

  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      d.u2q(r, c) = d.q(r, c);
      d.u2q(r, c + 2) = d.sqrt_complement(r, c);
      d.u2q(r + 2, c) = d.sqrt_complement(r, c);
      d.u2q(r + 2, c + 2) = -d.q(r, c);
    }
  const double err = max_abs_diff(d.u2q * adjoint(d.u2q), Mat4::identity());
  if (err > 1e-12) throw DomainError("dilation is not orthogonal (error " + std::to_string(err) + ")");
  return d;
}

DilationSet build_dilation(const OscParams& p, const MatterLayer& production_layer, double energy_gev) {
  const EffectiveParams e = effective_params(p, production_layer, energy_gev);
  return build_dilation(p.theta, e.theta_m);
}

Circuit build_dilation_circuit(const DilationSet& d) {
  return Circuit(2, {GateOp::unitary2q(d.u2q), GateOp::measure(kEncodedQubit)});
}

Circuit build_msw_circuit(const SynthesisParams& sp) {
  std::vector<GateOp> ops;
  for (int layer = 0; layer < 3; ++layer) {
    if (layer > 0) ops.push_back(GateOp::cnot(kAncillaQubit, kEncodedQubit));
    ops.push_back(GateOp::ry(sp.alpha[layer], kAncillaQubit));
    ops.push_back(GateOp::ry(sp.beta[layer], kEncodedQubit));
  }
  ops.push_back(GateOp::measure(kEncodedQubit));
  return Circuit(2, std::move(ops));
}

}  // namespace nuqsim
