// Copyright 2026 The lmg-bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "lmg/bethe.hpp"
#include "lmg/circuit.hpp"
#include "lmg/circuit_io.hpp"
#include "lmg/ego.hpp"
#include "lmg/errors.hpp"
#include "lmg/model.hpp"

namespace lmg {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> n7_target() {
  const ModelParams p = make_params(7, 0.75, 0.5);
  const SectorConfig c{3, 1, 0};
  return encode(build_eigenstate(solve_bethe(c, p).front(), p), c);
}

std::vector<double> random_unit(std::mt19937_64& rng, int size) {
  std::normal_distribution<double> g;
  std::vector<double> t(static_cast<std::size_t>(size));
  double s = 0.0;
  for (double& x : t) {
    x = g(rng);
    s += x * x;
  }
  for (double& x : t) x /= std::sqrt(s);
  return t;
}

double overlap(const std::vector<double>& a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

TEST(Circuit, ControlQubits) {
  for (int n = 1; n <= 9; ++n) EXPECT_EQ(control_qubit(n, DepthMode::kLinear), n);
  const std::vector<int> log{1, 1, 2, 1, 2, 3, 4, 1, 2, 3, 4, 5, 6, 7, 8, 1};
  for (int n = 1; n <= 16; ++n) EXPECT_EQ(control_qubit(n, DepthMode::kLog), log[n - 1]) << n;
  EXPECT_THROW(control_qubit(0, DepthMode::kLog), InvalidArgument);
}

TEST(Circuit, ModeNames) {
  EXPECT_EQ(parse_depth_mode("log"), DepthMode::kLog);
  EXPECT_EQ(to_string(DepthMode::kLinear), "linear");
  EXPECT_THROW(parse_depth_mode("quadratic"), InvalidArgument);
  EXPECT_EQ(parse_gate_kind(to_string(GateKind::kCRY)), GateKind::kCRY);
}

TEST(Circuit, GateAndLayerCounts) {
  for (int m = 0; m <= 17; ++m) {
    const std::vector<double> zeros(static_cast<std::size_t>(m), 0.1);
    const Circuit lin = build_circuit({zeros, DepthMode::kLinear});
    const Circuit log = build_circuit({zeros, DepthMode::kLog});
    EXPECT_NO_THROW(validate(lin));
    EXPECT_NO_THROW(validate(log));
    EXPECT_EQ(lin.num_qubits, m + 1);
    EXPECT_EQ(lin.two_qubit_gate_count(), 2 * m);
    EXPECT_EQ(log.two_qubit_gate_count(), 2 * m);
    EXPECT_EQ(lin.two_qubit_layer_count(), 2 * m);
    const int depth = m == 0 ? 0 : 2 * (static_cast<int>(std::floor(std::log2(m))) + 1);
    EXPECT_EQ(log.two_qubit_layer_count(), depth) << m;
  }
  const Circuit only_x = build_circuit({{}, DepthMode::kLog});
  ASSERT_EQ(only_x.gates.size(), 1u);
  EXPECT_EQ(only_x.gates[0].kind, GateKind::kX);
  EXPECT_EQ(only_x.gates[0].target, 1);
}

TEST(Circuit, StepStructure) {
  const Circuit c = build_circuit({{0.1, 0.2, 0.3}, DepthMode::kLog});
  // X, CRY(1->2), CX(2->1), CRY(1->3), CRY(2->4), CX(3->1), CX(4->2)
  ASSERT_EQ(c.gates.size(), 7u);
  EXPECT_EQ(c.gates[1].kind, GateKind::kCRY);
  EXPECT_EQ(*c.gates[1].control, 1);
  EXPECT_EQ(c.gates[1].target, 2);
  EXPECT_EQ(*c.gates[2].control, 2);
  EXPECT_EQ(c.gates[2].target, 1);
  EXPECT_EQ(*c.gates[4].control, 2);
  EXPECT_EQ(c.gates[4].target, 4);
  EXPECT_DOUBLE_EQ(*c.gates[4].angle, 0.3);
  EXPECT_EQ(c.layers.size(), 5u);
}

TEST(Circuit, N7LinearAngles) {
  const AngleSet a = linear_angles(n7_target());
  ASSERT_EQ(a.m(), 3);
  const std::vector<double> expected{3.13478, 3.20338, 9.78939};
  for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(angle_distance(a.thetas[j], expected[j]), 1e-5);
  EXPECT_GT(product_form_fidelity(a, n7_target()), 1.0 - 1e-13);
}

TEST(Circuit, N7LogAnglesAreGaugeEquivalent) {
  const auto t = n7_target();
  const AngleSet a = log_angles(t);
  EXPECT_GT(product_form_fidelity(a, t), 1.0 - 1e-13);
  EXPECT_TRUE(gauge_equivalent(a, {{-2.77709, 3.10401, 3.07876}, DepthMode::kLog}, 1e-4));
  EXPECT_FALSE(gauge_equivalent(a, {{-2.77709, 3.10401, 2.9}, DepthMode::kLog}, 1e-4));
}

TEST(Circuit, AmplitudesRoundTripRandomTargets) {
  std::mt19937_64 rng(7);
  for (int size = 1; size <= 33; ++size) {
    const auto t = random_unit(rng, size);
    for (DepthMode mode : {DepthMode::kLinear, DepthMode::kLog}) {
      const AngleSet a = angles_for(t, mode);
      EXPECT_EQ(a.mode, mode);
      EXPECT_EQ(a.m(), size - 1);
      const auto amps = circuit_amplitudes(a);
      for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(amps[k], t[k], 1e-10) << size;
    }
  }
}

TEST(Circuit, ProductFormHandlesZeroDenominators) {
  const std::vector<std::vector<double>> targets{
      {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0},
      {0.0, 0.0, 0.0, -1.0}, {0.6, 0.0, 0.0, -0.8}, {0.0, -1.0}};
  for (const auto& t : targets) {
    for (DepthMode mode : {DepthMode::kLinear, DepthMode::kLog}) {
      const AngleSet a = angles_for(t, mode);
      const auto amps = circuit_amplitudes(a);
      EXPECT_NEAR(overlap(amps, t), 1.0, 1e-12);
    }
  }
}

TEST(Circuit, RefinementRecoversPerturbedAngles) {
  std::mt19937_64 rng(11);
  const auto t = random_unit(rng, 9);
  AngleSet start = log_angles(t);
  for (double& th : start.thetas) th += 0.05;
  EXPECT_LT(product_form_fidelity(start, t), 1.0 - 1e-6);
  const AngleSet fixed = refine_angles(start, t);
  EXPECT_GT(product_form_fidelity(fixed, t), 1.0 - 1e-10);
}

TEST(Circuit, RejectsUnnormalizedTargets) {
  const std::vector<double> t{0.5, 0.5};
  EXPECT_THROW(linear_angles(t), InvalidArgument);
  EXPECT_THROW(log_angles(t), InvalidArgument);
  EXPECT_THROW(linear_angles(std::vector<double>{}), InvalidArgument);
}

TEST(Circuit, AnglesLiveOnFourPiCircle) {
  EXPECT_NEAR(angle_distance(0.1, 0.1 + 4 * kPi), 0.0, 1e-12);
  EXPECT_NEAR(angle_distance(0.1, 0.1 + 2 * kPi), 2 * kPi, 1e-12);
  AngleSet a{{0.3, -1.2, 2.0}, DepthMode::kLinear};
  AngleSet b = a;
  for (double& th : b.thetas) th += 4 * kPi;
  EXPECT_TRUE(gauge_equivalent(a, b, 1e-12));
  const auto amps_a = circuit_amplitudes(a);
  const auto amps_b = circuit_amplitudes(b);
  for (std::size_t k = 0; k < amps_a.size(); ++k) EXPECT_NEAR(amps_a[k], amps_b[k], 1e-12);
}

TEST(Circuit, GlobalSignIsAGauge) {
  std::mt19937_64 rng(13);
  auto t = random_unit(rng, 6);
  const AngleSet a = linear_angles(t);
  for (double& x : t) x = -x;
  EXPECT_TRUE(gauge_equivalent(a, linear_angles(t), 1e-9));
}

TEST(Circuit, EncodeDecodeRoundTrip) {
  const SectorConfig c{3, 1, 0};
  const FockVector psi(7, 0, {0.5, -0.5, 0.5, 0.5});
  const auto t = encode(psi, c);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_DOUBLE_EQ(t[0], 0.5);
  EXPECT_DOUBLE_EQ(t[1], -0.5);
  const FockVector back = decode(t, c);
  EXPECT_LT((back - psi).norm(), 1e-15);
  EXPECT_THROW(encode(FockVector(6, 0, {1, 0, 0, 0}), c), InvalidArgument);
}

TEST(Circuit, ValidationCatchesBadCircuits) {
  Circuit c = build_circuit({{0.1, 0.2}, DepthMode::kLinear});
  Circuit bad = c;
  bad.gates[1].target = 9;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = c;
  bad.gates[1].angle.reset();
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = c;
  bad.gates[1].angle = std::nan("");
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = c;
  bad.layers.pop_back();
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = c;
  bad.layers[1].push_back(2);
  bad.layers.erase(bad.layers.begin() + 2);
  EXPECT_THROW(validate(bad), InvalidArgument);
}

TEST(CircuitIo, JsonRoundTripIsExact) {
  std::mt19937_64 rng(17);
  for (DepthMode mode : {DepthMode::kLinear, DepthMode::kLog}) {
    const Circuit c = build_circuit(angles_for(random_unit(rng, 12), mode));
    const Circuit back = circuit_from_json(circuit_to_json(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(circuit_to_json(back), circuit_to_json(c));
  }
}

TEST(CircuitIo, RejectsMalformedJson) {
  EXPECT_THROW(circuit_from_json("{"), InvalidArgument);
  EXPECT_THROW(circuit_from_json(R"({"num_qubits": 2, "gates": []})"), InvalidArgument);
  EXPECT_THROW(circuit_from_json(
                   R"({"num_qubits": 2, "gates": [{"kind": "swap", "target": 1}], "layers": [[0]]})"),
               InvalidArgument);
  EXPECT_THROW(circuit_from_json(
                   R"({"num_qubits": 2, "gates": [{"kind": "x", "target": 3}], "layers": [[0]]})"),
               InvalidArgument);
}

TEST(CircuitIo, Qasm) {
  const Circuit c = build_circuit({{0.25, -1.5}, DepthMode::kLinear});
  const std::string q = circuit_to_qasm(c);
  EXPECT_EQ(q.rfind("OPENQASM 3;", 0), 0u);
  EXPECT_NE(q.find("include \"stdgates.inc\";"), std::string::npos);
  EXPECT_NE(q.find("qubit[3] q;"), std::string::npos);
  EXPECT_NE(q.find("x q[0];"), std::string::npos);
  EXPECT_NE(q.find("ctrl @ ry(0.25) q[0], q[1];"), std::string::npos);
  EXPECT_NE(q.find("cx q[1], q[0];"), std::string::npos);
  EXPECT_NE(q.find("ctrl @ ry(-1.5) q[1], q[2];"), std::string::npos);
  EXPECT_EQ(export_circuit(c, "qasm"), q);
  EXPECT_THROW(export_circuit(c, "quil"), InvalidArgument);
}

}  // namespace
}  // namespace lmg
