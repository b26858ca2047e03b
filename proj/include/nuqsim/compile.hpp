#pragma once

// Single-qubit circuit rewriting: virtual-Z phase folding and lowering to the
// native {RZ, SX, X} basis. Plus the one-gate-per-line text form.

#include <iosfwd>
#include <string>
#include <utility>

#include "nuqsim/qsim.hpp"

namespace nuqsim {

/// A resonant drive pulse: rotation by `theta` about the equatorial axis
/// n(phi) = (cos phi, -sin phi, 0). Realized as U(theta, -phi, phi).
struct PulseGate {
  double theta = 0.0;
  double phi = 0.0;

  GateOp as_gate(int qubit = 0) const { return GateOp::u(theta, -phi, phi, qubit); }
};

struct CompileReport {
  int input_gate_count = 0;   // non-measure ops before the pass
  int output_gate_count = 0;  // non-measure ops after the pass
  int physical_pulse_count = 0;
  int folded_rz_count = 0;
  double residual_rz = 0.0;  // accumulated frame angle at the end of the circuit
  bool residual_elided = false;
};

struct VirtualZOptions {
  /// Wrap every emitted phase into (-pi, pi]. Off by default so compiled
  /// arguments read as literal cumulative sums.
  bool normalize_phases = false;
};

/// Folds every RZ into a running frame angle L. RY(t) becomes U(t, -L, L) once
/// a nonzero frame exists; U(t, p, l) becomes U(t, -(L + l), L + l) and the
/// frame advances to L + l + p; X is kept and negates the frame. A trailing
/// RZ(L) is emitted unless the circuit ends in a measurement of the qubit.
/// Throws UnsupportedPassError for width-2 circuits.
std::pair<Circuit, CompileReport> virtual_z_pass(const Circuit& c, const VirtualZOptions& options = {});

/// Rewrites a single-qubit X/SX/RY/RZ/U circuit into RZ, SX and X only.
/// U(t, p, l) expands (in time order) to RZ(l), SX, RZ(t + pi), SX, RZ(p + pi),
/// with collapsed forms for t = 0, pi/2 and pi. Zero-angle RZs are dropped.
/// Throws UnsupportedPassError on CNOT or width-2 circuits.
Circuit lower_to_native(const Circuit& c);

/// Checks the U expansion used by lower_to_native against gate_matrix on a
/// fixed set of angles. Runs once per process; throws std::logic_error on
/// convention drift. Called by lower_to_native on first use.
void verify_native_lowering();

/// Gates that need a physical pulse. RZ is free when `virtual_z` is set
/// (the compiled-device view) and costs a pulse otherwise.
int pulse_count(const Circuit& c, bool virtual_z = true);

/// Maps an angle to (-pi, pi].
double wrap_angle(double a);

/// One gate per line, `kind angle(s) qubit(s)`, preceded by `width N`.
/// Angles use 17 significant digits so the dump round-trips exactly.
std::string dump_circuit(const Circuit& c);
Circuit parse_circuit(const std::string& text);

}  // namespace nuqsim
