#include "nuqsim/qsim.hpp"

#include <cmath>
#include <string>

#include "nuqsim/errors.hpp"

namespace nuqsim {

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kX: return "x";
    case GateKind::kSX: return "sx";
    case GateKind::kRY: return "ry";
    case GateKind::kRZ: return "rz";
    case GateKind::kU: return "u";
    case GateKind::kCNOT: return "cx";
    case GateKind::kUnitary2Q: return "unitary2q";
    case GateKind::kMeasure: return "measure";
  }
  return "?";
}

bool operator==(const GateOp& a, const GateOp& b) {
  if (a.kind != b.kind || a.angles != b.angles || a.qubits != b.qubits) return false;
  if (a.kind != GateKind::kUnitary2Q) return true;
  if (a.matrix == b.matrix) return true;
  return a.matrix && b.matrix && a.matrix->a == b.matrix->a;
}

namespace {

int arity(GateKind kind) {
  switch (kind) {
    case GateKind::kCNOT:
    case GateKind::kUnitary2Q:
      return 2;
    default:
      return 1;
  }
}

void validate_op(const GateOp& g, int width, std::size_t index) {
  const std::string where = "op " + std::to_string(index) + " (" + gate_name(g.kind) + ")";
  for (double a : g.angles)
    if (!std::isfinite(a)) throw InvalidGateError(where + ": non-finite angle");
  const int n = arity(g.kind);
  if (n > width) throw DimensionError(where + ": two-qubit gate on a width-1 circuit");
  for (int i = 0; i < n; ++i)
    if (g.qubits[i] < 0 || g.qubits[i] >= width)
      throw DimensionError(where + ": qubit index " + std::to_string(g.qubits[i]) + " out of range");
  if (g.kind == GateKind::kCNOT && g.qubits[0] == g.qubits[1])
    throw InvalidGateError(where + ": CNOT control equals target");
  if (g.kind == GateKind::kUnitary2Q) {
    if (!g.matrix) throw InvalidGateError(where + ": missing matrix");
    if (g.qubits != std::array<int, 2>{0, 1}) throw InvalidGateError(where + ": must act on qubits (0, 1)");
    if (max_abs_diff(*g.matrix * adjoint(*g.matrix), Mat4::identity()) > 1e-10)
      throw InvalidGateError(where + ": matrix is not unitary");
  }
}

Mat2 u_matrix(double theta, double phi, double lam) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  Mat2 m;
  m(0, 0) = c;
  m(0, 1) = -std::polar(1.0, lam) * s;
  m(1, 0) = std::polar(1.0, phi) * s;
  m(1, 1) = std::polar(1.0, phi + lam) * c;
  return m;
}

Mat4 cnot_matrix(int control, int target) {
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i) {
    const std::size_t cbit = std::size_t{1} << (1 - control);
    const std::size_t tbit = std::size_t{1} << (1 - target);
    const std::size_t j = (i & cbit) ? (i ^ tbit) : i;
    m(j, i) = 1.0;
  }
  return m;
}

}  // namespace

Circuit::Circuit(int width, std::vector<GateOp> ops) : width_(width), ops_(std::move(ops)) {
  if (width_ != 1 && width_ != 2) throw DimensionError("circuit width must be 1 or 2");
  bool in_tail = false;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    validate_op(ops_[i], width_, i);
    if (ops_[i].kind == GateKind::kMeasure) {
      in_tail = true;
    } else if (in_tail) {
      throw InvalidGateError("op " + std::to_string(i) + ": gate after measurement");
    }
  }
}

std::vector<int> Circuit::measured_qubits() const {
  std::vector<int> out;
  for (const auto& g : ops_)
    if (g.kind == GateKind::kMeasure) out.push_back(g.qubits[0]);
  return out;
}

std::span<const GateOp> Circuit::body() const {
  std::size_t n = ops_.size();
  while (n > 0 && ops_[n - 1].kind == GateKind::kMeasure) --n;
  return {ops_.data(), n};
}

StateVector::StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
  if (amps_.size() != 2 && amps_.size() != 4)
    throw DimensionError("state dimension must be 2 or 4, got " + std::to_string(amps_.size()));
  for (const auto& a : amps_)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw DimensionError("non-finite amplitude");
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > kNormTolerance) throw DimensionError("state is not normalized");
}

StateVector StateVector::basis(int width, std::size_t index) {
  if (width != 1 && width != 2) throw DimensionError("width must be 1 or 2");
  const std::size_t dim = std::size_t{1} << width;
  if (index >= dim) throw DimensionError("basis index out of range");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateVector(std::move(amps));
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

Mat2 single_qubit_matrix(const GateOp& g) {
  const auto& ang = g.angles;
  switch (g.kind) {
    case GateKind::kX: {
      Mat2 m;
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      return m;
    }
    case GateKind::kSX:
      return u_matrix(M_PI / 2, -M_PI / 2, M_PI / 2);
    case GateKind::kRY: {
      const double c = std::cos(ang[0] / 2);
      const double s = std::sin(ang[0] / 2);
      Mat2 m;
      m(0, 0) = c;
      m(0, 1) = -s;
      m(1, 0) = s;
      m(1, 1) = c;
      return m;
    }
    case GateKind::kRZ: {
      Mat2 m;
      m(0, 0) = std::polar(1.0, -ang[0] / 2);
      m(1, 1) = std::polar(1.0, ang[0] / 2);
      return m;
    }
    case GateKind::kU:
      return u_matrix(ang[0], ang[1], ang[2]);
    case GateKind::kCNOT:
    case GateKind::kUnitary2Q:
      throw InvalidGateError(std::string(gate_name(g.kind)) + " is not a single-qubit gate");
    case GateKind::kMeasure:
      break;
  }
  throw InvalidGateError("measure has no matrix");
}

GateMatrix gate_matrix(const GateOp& g) {
  switch (g.kind) {
    case GateKind::kCNOT:
      if (g.qubits[0] == g.qubits[1] || g.qubits[0] < 0 || g.qubits[0] > 1 || g.qubits[1] < 0 || g.qubits[1] > 1)
        throw InvalidGateError("CNOT needs distinct qubits in {0, 1}");
      return cnot_matrix(g.qubits[0], g.qubits[1]);
    case GateKind::kUnitary2Q:
      if (!g.matrix) throw InvalidGateError("unitary2q without matrix");
      return *g.matrix;
    default:
      return single_qubit_matrix(g);
  }
}

Mat4 embed(const GateOp& g) {
  if (g.is_two_qubit()) return std::get<Mat4>(gate_matrix(g));
  const Mat2 m = single_qubit_matrix(g);
  if (g.target() == 0) return kron(m, Mat2::identity());
  if (g.target() == 1) return kron(Mat2::identity(), m);
  throw DimensionError("qubit index out of range for width 2");
}

StateVector apply(const StateVector& state, const GateOp& g) {
  if (g.kind == GateKind::kMeasure) throw InvalidGateError("measure cannot be applied as a gate");
  const auto& in = state.amps();
  std::vector<Complex> out(in.size());
  if (state.dim() == 2) {
    if (g.is_two_qubit()) throw DimensionError("two-qubit gate applied to a single-qubit state");
    if (g.target() != 0) throw DimensionError("qubit index out of range for width 1");
    const Mat2 m = single_qubit_matrix(g);
    out[0] = m(0, 0) * in[0] + m(0, 1) * in[1];
    out[1] = m(1, 0) * in[0] + m(1, 1) * in[1];
  } else {
    const Mat4 m = embed(g);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) out[r] += m(r, c) * in[c];
  }
  return StateVector(std::move(out), StateVector::Unchecked{});
}

StateVector execute(const Circuit& c) {
  StateVector s = StateVector::basis(c.width(), 0);
  for (const auto& g : c.body()) s = apply(s, g);
  return s;
}

Mat2 circuit_unitary_1q(const Circuit& c) {
  if (c.width() != 1) throw DimensionError("expected a width-1 circuit");
  Mat2 u = Mat2::identity();
  for (const auto& g : c.body()) u = single_qubit_matrix(g) * u;
  return u;
}

Mat4 circuit_unitary_2q(const Circuit& c) {
  if (c.width() != 2) throw DimensionError("expected a width-2 circuit");
  Mat4 u = Mat4::identity();
  for (const auto& g : c.body()) u = embed(g) * u;
  return u;
}

std::pair<double, double> probabilities(const StateVector& state, int qubit) {
  const auto& a = state.amps();
  if (state.dim() == 2) {
    if (qubit != 0) throw DimensionError("qubit index out of range for width 1");
    return {std::norm(a[0]), std::norm(a[1])};
  }
  if (qubit == 0) return {std::norm(a[0]) + std::norm(a[1]), std::norm(a[2]) + std::norm(a[3])};
  if (qubit == 1) return {std::norm(a[0]) + std::norm(a[2]), std::norm(a[1]) + std::norm(a[3])};
  throw DimensionError("qubit index out of range for width 2");
}

ShotResult sample(const StateVector& state, int qubit, std::int64_t shots, std::uint64_t seed,
                  std::uint64_t stream_index) {
  if (shots < 1) throw DomainError("shots must be at least 1");
  const double p0 = probabilities(state, qubit).first;
  Pcg32 rng = make_stream(seed, stream_index, SeedDomain::kSampling);
  std::int64_t zeros = 0;
  for (std::int64_t i = 0; i < shots; ++i)
    if (rng.uniform01() < p0) ++zeros;
  ShotResult r;
  r.shots = shots;
  r.seed = seed;
  if (zeros > 0) r.counts["0"] = zeros;
  if (shots - zeros > 0) r.counts["1"] = shots - zeros;
  return r;
}

ShotResult run_shots(const Circuit& c, std::int64_t shots, std::uint64_t seed, std::uint64_t stream_index) {
  const auto measured = c.measured_qubits();
  if (measured.size() != 1) throw InvalidGateError("run_shots needs exactly one measured qubit");
  return sample(execute(c), measured.front(), shots, seed, stream_index);
}

}  // namespace nuqsim
