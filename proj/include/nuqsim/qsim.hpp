#pragma once

// Exact statevector simulation of 1- and 2-qubit circuits.
//
// Basis convention for width 2: index = 2*q0 + q1, i.e. qubit 0 is the most
// significant bit. In the MSW dilation circuit qubit 0 is the ancilla q_A and
// qubit 1 the encoded qubit q_B, so a 4x4 unitary written in 2x2 blocks is
// indexed by q_A.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nuqsim/linalg.hpp"
#include "nuqsim/rng.hpp"

namespace nuqsim {

enum class GateKind { kX, kSX, kRY, kRZ, kU, kCNOT, kUnitary2Q, kMeasure };

const char* gate_name(GateKind kind);

/// One circuit instruction. Angles are radians. Unused angle/qubit slots are 0.
///
/// kSX is the native sqrt(X) pulse with U(pi/2, -pi/2, pi/2) semantics.
/// kUnitary2Q carries an explicit 4x4 matrix over qubits (0, 1).
struct GateOp {
  GateKind kind = GateKind::kX;
  std::array<double, 3> angles{};
  std::array<int, 2> qubits{};
  std::shared_ptr<const Mat4> matrix;

  static GateOp x(int q) { return {GateKind::kX, {}, {q, 0}, nullptr}; }
  static GateOp sx(int q) { return {GateKind::kSX, {}, {q, 0}, nullptr}; }
  static GateOp ry(double angle, int q) { return {GateKind::kRY, {angle, 0, 0}, {q, 0}, nullptr}; }
  static GateOp rz(double angle, int q) { return {GateKind::kRZ, {angle, 0, 0}, {q, 0}, nullptr}; }
  static GateOp u(double theta, double phi, double lam, int q) {
    return {GateKind::kU, {theta, phi, lam}, {q, 0}, nullptr};
  }
  static GateOp cnot(int control, int target) { return {GateKind::kCNOT, {}, {control, target}, nullptr}; }
  static GateOp unitary2q(const Mat4& m) {
    return {GateKind::kUnitary2Q, {}, {0, 1}, std::make_shared<const Mat4>(m)};
  }
  static GateOp measure(int q) { return {GateKind::kMeasure, {}, {q, 0}, nullptr}; }

  bool is_two_qubit() const { return kind == GateKind::kCNOT || kind == GateKind::kUnitary2Q; }
  int target() const { return qubits[0]; }
};

bool operator==(const GateOp& a, const GateOp& b);

/// Ordered gate list over 1 or 2 qubits. Validated on construction:
/// Measure ops only at the tail, qubit indices below the width, finite angles,
/// CNOT control distinct from target.
class Circuit {
 public:
  explicit Circuit(int width, std::vector<GateOp> ops = {});

  int width() const { return width_; }
  const std::vector<GateOp>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }

  /// Qubits measured at the tail, in op order.
  std::vector<int> measured_qubits() const;

  /// Ops excluding the trailing measurements.
  std::span<const GateOp> body() const;

 private:
  int width_;
  std::vector<GateOp> ops_;
};

/// Normalized state of width 1 (dim 2) or 2 (dim 4).
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws DimensionError unless dim is 2 or 4 and the norm is 1 within tolerance.
  explicit StateVector(std::vector<Complex> amps);

  static StateVector basis(int width, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  int width() const { return dim() == 2 ? 1 : 2; }
  const std::vector<Complex>& amps() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;

 private:
  struct Unchecked {};
  StateVector(std::vector<Complex> amps, Unchecked) : amps_(std::move(amps)) {}
  friend StateVector apply(const StateVector&, const GateOp&);

  std::vector<Complex> amps_;
};

using GateMatrix = std::variant<Mat2, Mat4>;

/// Exact matrix of a gate: 2x2 for single-qubit kinds, 4x4 for CNOT and
/// explicit 2-qubit unitaries (CNOT is expressed on the (control, target)
/// ordering given by its qubit indices). Measure throws InvalidGateError.
GateMatrix gate_matrix(const GateOp& g);

/// 2x2 matrix of a single-qubit gate; throws InvalidGateError otherwise.
Mat2 single_qubit_matrix(const GateOp& g);

/// Full 4x4 action of any non-measure gate on a width-2 register.
Mat4 embed(const GateOp& g);

StateVector apply(const StateVector& state, const GateOp& g);

/// Runs every non-measure op on |0...0>.
StateVector execute(const Circuit& c);

/// Total unitary of the non-measure ops.
Mat2 circuit_unitary_1q(const Circuit& c);
Mat4 circuit_unitary_2q(const Circuit& c);

/// Z-basis outcome probabilities of one qubit (marginal for width 2).
std::pair<double, double> probabilities(const StateVector& state, int qubit);

struct ShotResult {
  std::int64_t shots = 0;
  std::map<std::string, std::int64_t> counts;
  std::uint64_t seed = 0;

  std::int64_t count(const std::string& outcome) const {
    auto it = counts.find(outcome);
    return it == counts.end() ? 0 : it->second;
  }
};

/// Draws `shots` Z-basis outcomes of `qubit`. Each shot takes one
/// Pcg32::uniform01() draw u from make_stream(seed, stream_index, kSampling)
/// and records "0" when u < p0, else "1".
ShotResult sample(const StateVector& state, int qubit, std::int64_t shots, std::uint64_t seed,
                  std::uint64_t stream_index = 0);

/// Samples the qubit measured by the circuit's tail (exactly one measurement required).
ShotResult run_shots(const Circuit& c, std::int64_t shots, std::uint64_t seed, std::uint64_t stream_index = 0);

}  // namespace nuqsim
