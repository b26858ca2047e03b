#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nuqsim/circuits.hpp"
#include "nuqsim/compile.hpp"
#include "nuqsim/errors.hpp"
#include "nuqsim/physics.hpp"

using namespace nuqsim;

namespace {

Circuit random_1q_circuit(std::mt19937_64& rng, int length, bool measure) {
  std::uniform_real_distribution<double> ang(-3 * M_PI, 3 * M_PI);
  std::uniform_int_distribution<int> kind(0, 4);
  std::vector<GateOp> ops;
  for (int i = 0; i < length; ++i) {
    switch (kind(rng)) {
      case 0: ops.push_back(GateOp::x(0)); break;
      case 1: ops.push_back(GateOp::sx(0)); break;
      case 2: ops.push_back(GateOp::ry(ang(rng), 0)); break;
      case 3: ops.push_back(GateOp::rz(ang(rng), 0)); break;
      default: ops.push_back(GateOp::u(ang(rng), ang(rng), ang(rng), 0));
    }
  }
  if (measure) ops.push_back(GateOp::measure(0));
  return Circuit(1, ops);
}

int count_kind(const Circuit& c, GateKind k) {
  int n = 0;
  for (const auto& g : c.ops()) n += g.kind == k;
  return n;
}

}  // namespace

TEST(VirtualZ, SlabCircuitFoldsIntoPulsePhases) {
  const OscParams p{deg(9.0), 2.5e-3};
  const SlabProfile prof = periodic_profile(5, 500, 10, 1000, 2);
  const double e = 6.0;
  const Circuit raw = build_slab_circuit(p, prof, e, false);
  const auto [compiled, report] = virtual_z_pass(raw);

  std::vector<double> th, ph;
  for (const auto& layer : prof.expanded()) {
    const auto eff = effective_params(p, layer, e);
    th.push_back(eff.theta_m);
    ph.push_back(phase(eff.dm2_m, layer.length_km, e));
  }
  const int n = static_cast<int>(th.size());
  ASSERT_EQ(compiled.size(), static_cast<std::size_t>(2 * n + 2));
  EXPECT_EQ(compiled.ops()[0].kind, GateKind::kX);
  EXPECT_EQ(compiled.ops().back().kind, GateKind::kMeasure);
  EXPECT_EQ(count_kind(compiled, GateKind::kRZ), 0);

  // Pulse k has phase equal to the accumulated layer phase before it.
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const GateOp& first = compiled.ops()[1 + 2 * k];
    const GateOp& second = compiled.ops()[2 + 2 * k];
    if (k == 0) {
      EXPECT_EQ(first.kind, GateKind::kRY);
      EXPECT_DOUBLE_EQ(first.angles[0], -2 * th[0]);
    } else {
      ASSERT_EQ(first.kind, GateKind::kU);
      EXPECT_DOUBLE_EQ(first.angles[0], -2 * th[k]);
      EXPECT_NEAR(first.angles[2], acc, 1e-13);
      EXPECT_NEAR(first.angles[1], -acc, 1e-13);
    }
    acc += ph[k];
    ASSERT_EQ(second.kind, GateKind::kU);
    EXPECT_DOUBLE_EQ(second.angles[0], 2 * th[k]);
    EXPECT_NEAR(second.angles[2], acc, 1e-13);
    EXPECT_NEAR(second.angles[1], -acc, 1e-13);
  }
  EXPECT_TRUE(report.residual_elided);
  EXPECT_NEAR(report.residual_rz, acc, 1e-12);
  EXPECT_EQ(report.folded_rz_count, n);
  EXPECT_EQ(report.input_gate_count, 3 * n + 1);
  EXPECT_EQ(pulse_count(raw, false), 3 * n + 1);
  EXPECT_EQ(pulse_count(compiled), 2 * n + 1);
  EXPECT_EQ(report.physical_pulse_count, 2 * n + 1);
}

TEST(VirtualZ, PhasesMatchAlternatingPattern) {
  // RY(a) RZ(f1) RY(b) RY(c) RZ(f2) RY(d) RY(e) RZ(f3) RY(g) -> phases 0, f1, f1, f1+f2, f1+f2, f1+f2+f3...
  const double f1 = 0.7, f2 = 1.9;
  const Circuit c(1, {GateOp::ry(0.1, 0), GateOp::rz(f1, 0), GateOp::ry(0.2, 0), GateOp::ry(0.3, 0),
                      GateOp::rz(f2, 0), GateOp::ry(0.4, 0), GateOp::ry(0.5, 0), GateOp::rz(f1, 0),
                      GateOp::ry(0.6, 0), GateOp::measure(0)});
  const auto out = virtual_z_pass(c).first;
  const std::vector<double> expected{0, f1, f1, f1 + f2, f1 + f2, 2 * f1 + f2};
  ASSERT_EQ(out.body().size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const GateOp& g = out.body()[i];
    const double lam = g.kind == GateKind::kRY ? 0.0 : g.angles[2];
    EXPECT_NEAR(lam, expected[i], 1e-15) << i;
  }
}

TEST(VirtualZ, NoRzLeavesCircuitUnchanged) {
  const Circuit c(1, {GateOp::x(0), GateOp::ry(0.4, 0), GateOp::ry(-1.1, 0), GateOp::measure(0)});
  const auto [out, report] = virtual_z_pass(c);
  EXPECT_EQ(out.ops(), c.ops());
  EXPECT_EQ(report.folded_rz_count, 0);
  EXPECT_FALSE(report.residual_elided);
}

TEST(VirtualZ, TrailingFrameKeptWithoutMeasurement) {
  const Circuit c(1, {GateOp::ry(0.4, 0), GateOp::rz(0.3, 0)});
  const auto [out, report] = virtual_z_pass(c);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.ops()[1].kind, GateKind::kRZ);
  EXPECT_DOUBLE_EQ(out.ops()[1].angles[0], 0.3);
  EXPECT_FALSE(report.residual_elided);
}

TEST(VirtualZ, RandomCircuitsPreserveUnitary) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 30);
  for (int i = 0; i < 1000; ++i) {
    const Circuit c = random_1q_circuit(rng, len(rng), false);
    const auto out = virtual_z_pass(c).first;
    ASSERT_LE(phase_aligned_diff(circuit_unitary_1q(out), circuit_unitary_1q(c)), 1e-12) << dump_circuit(c);
    // at most one RZ survives, at the end
    for (std::size_t k = 0; k + 1 < out.size(); ++k) ASSERT_NE(out.ops()[k].kind, GateKind::kRZ);
  }
}

TEST(VirtualZ, MeasuredRandomCircuitsPreserveProbabilities) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> len(1, 30);
  for (int i = 0; i < 1000; ++i) {
    const Circuit c = random_1q_circuit(rng, len(rng), true);
    const auto out = virtual_z_pass(c).first;
    ASSERT_EQ(out.ops().back().kind, GateKind::kMeasure);
    ASSERT_EQ(count_kind(out, GateKind::kRZ), 0);
    const auto a = probabilities(execute(c), 0);
    const auto b = probabilities(execute(out), 0);
    ASSERT_NEAR(a.first, b.first, 1e-12);
  }
}

TEST(VirtualZ, Idempotent) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const Circuit c = random_1q_circuit(rng, 12, i % 2 == 0);
    const auto once = virtual_z_pass(c).first;
    const auto [twice, report] = virtual_z_pass(once);
    EXPECT_EQ(pulse_count(twice), pulse_count(once));
    EXPECT_EQ(twice.size(), once.size());
    EXPECT_LE(phase_aligned_diff(circuit_unitary_1q(twice), circuit_unitary_1q(once)), 1e-12);
  }
}

TEST(VirtualZ, NormalizedPhasesStayInRange) {
  std::mt19937_64 rng(14);
  const Circuit c = random_1q_circuit(rng, 40, false);
  const auto out = virtual_z_pass(c, VirtualZOptions{true}).first;
  for (const auto& g : out.ops())
    if (g.kind == GateKind::kU) {
      EXPECT_GT(g.angles[1], -M_PI);
      EXPECT_LE(g.angles[1], M_PI);
    }
  EXPECT_LE(phase_aligned_diff(circuit_unitary_1q(out), circuit_unitary_1q(c)), 1e-12);
}

TEST(VirtualZ, RejectsTwoQubitCircuits) {
  EXPECT_THROW(virtual_z_pass(Circuit(2, {GateOp::cnot(0, 1)})), UnsupportedPassError);
  EXPECT_THROW(virtual_z_pass(Circuit(2, {GateOp::ry(0.1, 1)})), UnsupportedPassError);
}

TEST(PulseCount, ExcludesOnlyVirtualRz) {
  const Circuit c(1, {GateOp::x(0), GateOp::rz(1, 0), GateOp::sx(0), GateOp::measure(0)});
  EXPECT_EQ(pulse_count(c), 2);
  EXPECT_EQ(pulse_count(c, false), 3);
}

TEST(Lowering, RandomUIsReproduced) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(-4 * M_PI, 4 * M_PI);
  for (int i = 0; i < 1000; ++i) {
    const Circuit c(1, {GateOp::u(ang(rng), ang(rng), ang(rng), 0)});
    const Circuit n = lower_to_native(c);
    for (const auto& g : n.ops())
      ASSERT_TRUE(g.kind == GateKind::kRZ || g.kind == GateKind::kSX || g.kind == GateKind::kX);
    ASSERT_LE(phase_aligned_diff(circuit_unitary_1q(n), circuit_unitary_1q(c)), 1e-12);
    ASSERT_LE(count_kind(n, GateKind::kSX), 2);
  }
}

TEST(Lowering, SpecialAnglesCollapse) {
  const Circuit half(1, {GateOp::u(M_PI / 2, 0.3, -0.8, 0)});
  EXPECT_EQ(count_kind(lower_to_native(half), GateKind::kSX), 1);
  EXPECT_LE(phase_aligned_diff(circuit_unitary_1q(lower_to_native(half)), circuit_unitary_1q(half)), 1e-12);

  const Circuit minus_half(1, {GateOp::u(-M_PI / 2, 0.3, -0.8, 0)});
  EXPECT_EQ(count_kind(lower_to_native(minus_half), GateKind::kSX), 1);
  EXPECT_LE(phase_aligned_diff(circuit_unitary_1q(lower_to_native(minus_half)), circuit_unitary_1q(minus_half)),
            1e-12);

  const Circuit flip(1, {GateOp::u(M_PI, 0.3, -0.8, 0)});
  const Circuit nf = lower_to_native(flip);
  EXPECT_EQ(count_kind(nf, GateKind::kSX), 0);
  EXPECT_EQ(count_kind(nf, GateKind::kX), 1);
  EXPECT_LE(phase_aligned_diff(circuit_unitary_1q(nf), circuit_unitary_1q(flip)), 1e-12);

  const Circuit zero(1, {GateOp::u(0, 0.3, 0.4, 0)});
  const Circuit nz = lower_to_native(zero);
  ASSERT_EQ(nz.size(), 1u);
  EXPECT_EQ(nz.ops()[0].kind, GateKind::kRZ);

  EXPECT_EQ(lower_to_native(Circuit(1, {GateOp::u(0, 0.3, -0.3, 0)})).size(), 0u);
}

TEST(Lowering, SxStaysSingleAndRzMerge) {
  const Circuit c(1, {GateOp::sx(0), GateOp::rz(0.2, 0), GateOp::rz(0.5, 0), GateOp::measure(0)});
  const Circuit n = lower_to_native(c);
  ASSERT_EQ(n.size(), 3u);
  EXPECT_EQ(n.ops()[0].kind, GateKind::kSX);
  EXPECT_EQ(n.ops()[1].kind, GateKind::kRZ);
  EXPECT_NEAR(n.ops()[1].angles[0], 0.7, 1e-15);
  EXPECT_EQ(n.ops()[2].kind, GateKind::kMeasure);
}

TEST(Lowering, RandomCircuitsAfterVirtualZ) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 300; ++i) {
    const Circuit c = random_1q_circuit(rng, 10, false);
    const Circuit n = lower_to_native(virtual_z_pass(c).first);
    ASSERT_LE(phase_aligned_diff(circuit_unitary_1q(n), circuit_unitary_1q(c)), 1e-12);
  }
}

TEST(Lowering, RejectsTwoQubitGates) {
  EXPECT_THROW(lower_to_native(Circuit(2, {GateOp::cnot(0, 1)})), UnsupportedPassError);
}

TEST(Lowering, SelfCheckPasses) { EXPECT_NO_THROW(verify_native_lowering()); }

TEST(WrapAngle, Range) {
  EXPECT_DOUBLE_EQ(wrap_angle(M_PI), M_PI);
  EXPECT_NEAR(wrap_angle(-M_PI), M_PI, 1e-15);
  EXPECT_NEAR(wrap_angle(3 * M_PI + 0.1), -M_PI + 0.1, 1e-14);
  EXPECT_DOUBLE_EQ(wrap_angle(0.5), 0.5);
}

TEST(CircuitText, RoundTripsExactly) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const Circuit c = random_1q_circuit(rng, 15, i % 3 == 0);
    const Circuit back = parse_circuit(dump_circuit(c));
    EXPECT_EQ(back.width(), 1);
    EXPECT_EQ(back.ops(), c.ops());
  }
  const Circuit two(2, {GateOp::ry(0.1, 0), GateOp::cnot(0, 1), GateOp::unitary2q(embed(GateOp::ry(0.3, 1))),
                        GateOp::measure(1)});
  const Circuit back = parse_circuit(dump_circuit(two));
  EXPECT_EQ(back.ops(), two.ops());
}

TEST(CircuitText, ReportsLine) {
  try {
    parse_circuit("width 1\nry 0.5 0\nfoo 1 0\n");
    FAIL();
  } catch (const InvalidGateError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_circuit("ry 0.5 0\n"), InvalidGateError);
  EXPECT_THROW(parse_circuit("width 1\nry 0\n"), InvalidGateError);
}
