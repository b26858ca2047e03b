#include "nuqsim/compile.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "nuqsim/errors.hpp"

namespace nuqsim {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kAngleEps = 1e-14;

void require_single_qubit(const Circuit& c, const char* pass) {
  if (c.width() != 1) throw UnsupportedPassError(std::string(pass) + ": only single-qubit circuits are supported");
  for (const auto& g : c.ops())
    if (g.is_two_qubit())
      throw UnsupportedPassError(std::string(pass) + ": two-qubit gate " + gate_name(g.kind) + " not supported");
}

bool near_multiple_of_two_pi(double a) { return std::abs(std::remainder(a, kTwoPi)) < kAngleEps; }

/// Appends RZ(angle), merging into a preceding RZ and dropping identities.
void push_rz(std::vector<GateOp>& out, double angle) {
  if (!out.empty() && out.back().kind == GateKind::kRZ) {
    angle += out.back().angles[0];
    out.pop_back();
  }
  if (!near_multiple_of_two_pi(angle)) out.push_back(GateOp::rz(angle, 0));
}

/// Native expansion of U(theta, phi, lam), in time order, up to global phase.
void expand_u(std::vector<GateOp>& out, double theta, double phi, double lam) {
  if (near_multiple_of_two_pi(theta)) {
    push_rz(out, phi + lam);
    return;
  }
  if (near_multiple_of_two_pi(theta - M_PI)) {
    push_rz(out, lam - phi + M_PI);
    out.push_back(GateOp::x(0));
    return;
  }
  // U(-pi/2, p, l) == U(pi/2, p + pi, l + pi) exactly.
  if (near_multiple_of_two_pi(theta + M_PI / 2)) {
    theta = M_PI / 2;
    phi += M_PI;
    lam += M_PI;
  }
  if (near_multiple_of_two_pi(theta - M_PI / 2)) {
    push_rz(out, lam - M_PI / 2);
    out.push_back(GateOp::sx(0));
    push_rz(out, phi + M_PI / 2);
    return;
  }
  push_rz(out, lam);
  out.push_back(GateOp::sx(0));
  push_rz(out, theta + M_PI);
  out.push_back(GateOp::sx(0));
  push_rz(out, phi + M_PI);
}

Mat2 product(const std::vector<GateOp>& ops) {
  Mat2 u = Mat2::identity();
  for (const auto& g : ops) u = single_qubit_matrix(g) * u;
  return u;
}

void check_native_lowering() {
  const std::array<std::array<double, 3>, 10> cases{{
      {0.3, 0.7, -1.1},
      {-2.4, 1.9, 0.2},
      {M_PI / 2, -M_PI / 2, M_PI / 2},
      {-M_PI / 2, 0.4, 2.5},
      {M_PI, 0.6, -0.3},
      {0.0, 1.2, 0.8},
      {kTwoPi, -0.5, 0.1},
      {3.0, -3.0, 3.0},
      {1e-3, 2.0, -2.0},
      {5.5, 0.0, 0.0},
  }};
  for (const auto& [t, p, l] : cases) {
    std::vector<GateOp> ops;
    expand_u(ops, t, p, l);
    for (const auto& g : ops)
      if (g.kind != GateKind::kRZ && g.kind != GateKind::kSX && g.kind != GateKind::kX)
        throw std::logic_error("native lowering emitted a non-native gate");
    const double err = phase_aligned_diff(single_qubit_matrix(GateOp::u(t, p, l, 0)), product(ops));
    if (err > 1e-12)
      throw std::logic_error("native lowering convention check failed for U(" + std::to_string(t) + ", " +
                             std::to_string(p) + ", " + std::to_string(l) + ")");
  }
}

}  // namespace

double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -M_PI) r += kTwoPi;
  return r;
}

std::pair<Circuit, CompileReport> virtual_z_pass(const Circuit& c, const VirtualZOptions& options) {
  require_single_qubit(c, "virtual_z_pass");
  const auto phase = [&](double a) { return options.normalize_phases ? wrap_angle(a) : a; };

  CompileReport report;
  std::vector<GateOp> out;
  double frame = 0.0;
  for (const auto& g : c.body()) {
    ++report.input_gate_count;
    switch (g.kind) {
      case GateKind::kRZ:
        frame += g.angles[0];
        ++report.folded_rz_count;
        break;
      case GateKind::kRY:
        if (frame == 0.0) {
          out.push_back(g);
        } else {
          out.push_back(GateOp::u(g.angles[0], phase(-frame), phase(frame), 0));
        }
        break;
      case GateKind::kX:
        // X RZ(L) = RZ(-L) X
        out.push_back(g);
        frame = -frame;
        break;
      case GateKind::kSX:
      case GateKind::kU: {
        const auto [theta, phi, lam] =
            g.kind == GateKind::kSX ? std::array<double, 3>{M_PI / 2, -M_PI / 2, M_PI / 2} : g.angles;
        const double offset = frame + lam;
        out.push_back(GateOp::u(theta, phase(-offset), phase(offset), 0));
        frame = offset + phi;
        break;
      }
      default:
        throw UnsupportedPassError(std::string("virtual_z_pass: unexpected gate ") + gate_name(g.kind));
    }
  }
  report.residual_rz = frame;
  const bool ends_in_measure = c.body().size() < c.size();
  if (frame != 0.0) {
    if (ends_in_measure) {
      report.residual_elided = true;
    } else {
      out.push_back(GateOp::rz(phase(frame), 0));
    }
  }
  for (std::size_t i = c.body().size(); i < c.size(); ++i) out.push_back(c.ops()[i]);

  Circuit compiled(1, std::move(out));
  report.output_gate_count = static_cast<int>(compiled.body().size());
  report.physical_pulse_count = pulse_count(compiled);
  return {std::move(compiled), report};
}

void verify_native_lowering() {
  static std::once_flag once;
  std::call_once(once, check_native_lowering);
}

Circuit lower_to_native(const Circuit& c) {
  require_single_qubit(c, "lower_to_native");
  verify_native_lowering();
  std::vector<GateOp> out;
  for (const auto& g : c.body()) {
    switch (g.kind) {
      case GateKind::kX:
      case GateKind::kSX:
        out.push_back(g);
        break;
      case GateKind::kRZ:
        push_rz(out, g.angles[0]);
        break;
      case GateKind::kRY:
        expand_u(out, g.angles[0], 0.0, 0.0);
        break;
      case GateKind::kU:
        expand_u(out, g.angles[0], g.angles[1], g.angles[2]);
        break;
      default:
        throw UnsupportedPassError(std::string("lower_to_native: unexpected gate ") + gate_name(g.kind));
    }
  }
  for (std::size_t i = c.body().size(); i < c.size(); ++i) out.push_back(c.ops()[i]);
  return Circuit(1, std::move(out));
}

int pulse_count(const Circuit& c, bool virtual_z) {
  int n = 0;
  for (const auto& g : c.ops()) {
    if (g.kind == GateKind::kMeasure) continue;
    if (g.kind == GateKind::kRZ && virtual_z) continue;
    ++n;
  }
  return n;
}

}  // namespace nuqsim
