#pragma once

// Fitting the two-CNOT RY ansatz to a target two-qubit unitary by maximizing
// the overlap fidelity F = |Tr(U_T^dagger U_R)|^2 / 16, with box constraints
// and random restarts.

#include <array>
#include <cstdint>

#include "nuqsim/circuits.hpp"
#include "nuqsim/execution.hpp"
#include "nuqsim/linalg.hpp"

namespace nuqsim {

using Params6 = std::array<double, 6>;

enum class LocalMethod {
  kQuasiNewton,    // projected BFGS with Armijo backtracking
  kPatternSearch,  // derivative-free compass search
};

struct FidelityProblem {
  Mat4 target = Mat4::identity();
  double lower = -M_PI;
  double upper = M_PI;
  int restarts = 1000;
  double init_lo = -1.0;
  double init_hi = 1.0;
  double tol_infidelity = 1e-9;
  LocalMethod method = LocalMethod::kQuasiNewton;
  int max_iterations = 500;

  /// Throws DomainError if the target is not unitary within 1e-10 or the
  /// settings are inconsistent.
  void validate() const;
};

struct OptimResult {
  SynthesisParams params;
  double infidelity = 1.0;
  int restarts_used = 0;
  bool converged = false;
};

/// Unitary of the ansatz, computed directly from real 2x2 rotations.
Mat4 ansatz_unitary(const SynthesisParams& sp);

double fidelity(const Mat4& target, const SynthesisParams& sp);

/// 1 - F and its gradient in the flat alpha1..3, beta1..3 order. The
/// gradient is exact: each RY angle enters the trace as a cos(t/2) + b sin(t/2),
/// so d Tr / dt = Tr(t + pi) / 2.
double infidelity(const Mat4& target, const Params6& x, Params6* gradient = nullptr);

struct LocalResult {
  Params6 x{};
  double infidelity = 1.0;
  int iterations = 0;
};

/// One local run from `start` (clamped into the box).
LocalResult local_minimize(const FidelityProblem& problem, const Params6& start);

/// Restart r starts from make_stream(seed, r, kOptimizer) drawn uniformly in
/// [init_lo, init_hi)^6. Restarts are scanned in index order; the first one
/// reaching tol_infidelity ends the search. The best result wins, ties going
/// to the lowest restart index. kParallel evaluates restarts in batches and
/// returns the same result as kSerial.
OptimResult optimize(const FidelityProblem& problem, std::uint64_t seed, Execution exec = Execution::kSerial);

}  // namespace nuqsim
