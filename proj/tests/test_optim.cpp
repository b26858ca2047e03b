#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nuqsim/circuits.hpp"
#include "nuqsim/errors.hpp"
#include "nuqsim/optim.hpp"
#include "nuqsim/physics.hpp"

using namespace nuqsim;

namespace {

Params6 random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  Params6 x;
  for (auto& v : x) v = u(rng);
  return x;
}

Mat4 solar_target(double e) {
  return build_dilation(OscParams{deg(33.5), 7.5e-5}, MatterLayer{150.0, 0.5, 0.0}, e).u2q;
}

}  // namespace

TEST(Ansatz, MatchesCircuitSimulation) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto sp = SynthesisParams::from_flat(random_params(rng));
    ASSERT_LE(max_abs_diff(ansatz_unitary(sp), circuit_unitary_2q(build_msw_circuit(sp))), 1e-14);
  }
}

TEST(Fidelity, SelfOverlapIsOne) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto sp = SynthesisParams::from_flat(random_params(rng));
    EXPECT_NEAR(fidelity(ansatz_unitary(sp), sp), 1.0, 1e-14);
  }
}

TEST(Fidelity, IgnoresGlobalPhase) {
  std::mt19937_64 rng(3);
  const auto sp = SynthesisParams::from_flat(random_params(rng));
  const auto other = SynthesisParams::from_flat(random_params(rng));
  const Mat4 t = ansatz_unitary(other);
  const Mat4 rotated = Complex(std::cos(0.7), std::sin(0.7)) * t;
  EXPECT_NEAR(fidelity(rotated, sp), fidelity(t, sp), 1e-14);
  EXPECT_NEAR(fidelity(-1.0 * ansatz_unitary(sp), sp), 1.0, 1e-14);
}

TEST(Fidelity, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(4);
  const double h = 1e-6;
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const Mat4 target = solar_target(0.001 + 0.0005 * i);
    const Params6 x = random_params(rng);
    Params6 g;
    infidelity(target, x, &g);
    for (std::size_t k = 0; k < 6; ++k) {
      Params6 xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const double fd = (infidelity(target, xp) - infidelity(target, xm)) / (2 * h);
      const double scale = std::max(std::abs(fd), 1e-3);
      ASSERT_LE(std::abs(g[k] - fd) / scale, 1e-4) << "point " << i << " component " << k;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 600);
}

TEST(Optimize, RecoversReachableTarget) {
  std::mt19937_64 rng(5);
  const auto sp = SynthesisParams::from_flat(random_params(rng));
  FidelityProblem pr;
  pr.target = ansatz_unitary(sp);
  pr.restarts = 200;
  const OptimResult r = optimize(pr, 0);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.infidelity, 1e-9);
  EXPECT_NEAR(fidelity(pr.target, r.params), 1.0, 1e-9);
}

TEST(Optimize, IdentityTarget) {
  FidelityProblem pr;
  pr.target = Mat4::identity();
  const OptimResult r = optimize(pr, 7);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(1.0 - fidelity(Mat4::identity(), r.params), 1e-9);
}

TEST(Optimize, SolarTargetsConverge) {
  for (double e : {0.001, 0.01, 0.05}) {
    FidelityProblem pr;
    pr.target = solar_target(e);
    const OptimResult r = optimize(pr, 0);
    EXPECT_TRUE(r.converged) << e;
    EXPECT_LT(r.infidelity, 1e-7) << e;
    EXPECT_LE(r.restarts_used, 1000);
    for (double v : r.params.flat()) {
      EXPECT_GE(v, -M_PI);
      EXPECT_LE(v, M_PI);
    }
  }
}

TEST(Optimize, DeterministicAndSerialEqualsParallel) {
  FidelityProblem pr;
  pr.target = solar_target(0.02);
  pr.tol_infidelity = 0.0;
  pr.restarts = 12;
  const OptimResult a = optimize(pr, 99, Execution::kSerial);
  const OptimResult b = optimize(pr, 99, Execution::kSerial);
  const OptimResult c = optimize(pr, 99, Execution::kParallel);
  EXPECT_EQ(a.params.flat(), b.params.flat());
  EXPECT_EQ(a.params.flat(), c.params.flat());
  EXPECT_EQ(a.infidelity, c.infidelity);
  EXPECT_EQ(a.restarts_used, c.restarts_used);
  EXPECT_EQ(a.converged, c.converged);
}

TEST(Optimize, PatternSearchAlsoConverges) {
  FidelityProblem pr;
  pr.target = solar_target(0.005);
  pr.method = LocalMethod::kPatternSearch;
  pr.tol_infidelity = 1e-8;
  pr.restarts = 50;
  const OptimResult r = optimize(pr, 0);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.infidelity, 1e-8);
}

TEST(Optimize, LocalRunClampsStart) {
  FidelityProblem pr;
  pr.target = solar_target(0.01);
  const LocalResult r = local_minimize(pr, {10, -10, 0, 0, 0, 0});
  for (double v : r.x) {
    EXPECT_GE(v, -M_PI);
    EXPECT_LE(v, M_PI);
  }
}

TEST(Optimize, RejectsBadProblems) {
  FidelityProblem pr;
  Mat4 bad = Mat4::identity();
  bad(0, 0) = 2.0;
  pr.target = bad;
  EXPECT_THROW(optimize(pr, 0), DomainError);
  pr.target = Mat4::identity();
  pr.restarts = 0;
  EXPECT_THROW(optimize(pr, 0), DomainError);
  pr.restarts = 1;
  pr.lower = 1;
  pr.upper = -1;
  EXPECT_THROW(optimize(pr, 0), DomainError);
}
