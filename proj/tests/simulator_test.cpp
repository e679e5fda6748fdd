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
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "lmg/bethe.hpp"
#include "lmg/circuit.hpp"
#include "lmg/ego.hpp"
#include "lmg/errors.hpp"
#include "lmg/model.hpp"
#include "lmg/simulator.hpp"

namespace lmg {
namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cd = std::complex<double>;

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Mat pauli(char op) {
  Mat m(2, 2);
  switch (op) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cd(0, -1), cd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = Mat::Identity(2, 2);
  }
  return m;
}

// Operator acting with ops[q - 1] on qubit q; qubit 1 is the leftmost factor.
Mat embed(const std::vector<Mat>& ops) {
  Mat out = Mat::Identity(1, 1);
  for (const Mat& m : ops) out = kron(out, m);
  return out;
}

Mat gate_matrix(const Gate& g, int n) {
  Mat u(2, 2);
  if (g.kind == GateKind::kX || g.kind == GateKind::kCX) {
    u = pauli('X');
  } else {
    const double c = std::cos(*g.angle / 2), s = std::sin(*g.angle / 2);
    u << c, -s, s, c;
  }
  std::vector<Mat> ops(static_cast<std::size_t>(n), Mat::Identity(2, 2));
  ops[static_cast<std::size_t>(g.target - 1)] = u;
  if (!g.control) return embed(ops);
  Mat p0(2, 2), p1(2, 2);
  p0 << 1, 0, 0, 0;
  p1 << 0, 0, 0, 1;
  std::vector<Mat> idle(static_cast<std::size_t>(n), Mat::Identity(2, 2));
  idle[static_cast<std::size_t>(*g.control - 1)] = p0;
  ops[static_cast<std::size_t>(*g.control - 1)] = p1;
  return embed(idle) + embed(ops);
}

Vec to_eigen(const StateVector& psi) {
  Vec v = Vec::Zero(Eigen::Index{1} << psi.num_qubits());
  for (const auto& [idx, a] : psi.nonzeros()) v(static_cast<Eigen::Index>(idx)) = a;
  return v;
}

Circuit random_circuit(std::mt19937_64& rng, int n, int count) {
  std::uniform_int_distribution<int> kind(0, 3), qubit(1, n);
  std::uniform_real_distribution<double> angle(-6.0, 6.0);
  Circuit c;
  c.num_qubits = n;
  for (int i = 0; i < count; ++i) {
    Gate g;
    g.kind = static_cast<GateKind>(kind(rng));
    g.target = qubit(rng);
    if (g.kind == GateKind::kRY || g.kind == GateKind::kCRY) g.angle = angle(rng);
    if (g.kind == GateKind::kCRY || g.kind == GateKind::kCX) {
      int ctl = qubit(rng);
      while (ctl == g.target) ctl = qubit(rng);
      g.control = ctl;
    }
    c.gates.push_back(g);
    c.layers.push_back({i});
  }
  return c;
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

const SectorConfig kN7{3, 1, 0};

std::vector<double> n7_target(const ModelParams& p) {
  return encode(build_eigenstate(solve_bethe(kN7, p).front(), p), kN7);
}

TEST(Simulator, FiducialAndBasisStates) {
  const StateVector f = StateVector::fiducial(4);
  EXPECT_EQ(f.amplitude(0b1000), cd(1.0));
  EXPECT_DOUBLE_EQ(f.norm_squared(), 1.0);
  EXPECT_DOUBLE_EQ(f.leakage(), 0.0);
  const auto oh = f.one_hot_amplitudes();
  ASSERT_EQ(oh.size(), 4u);
  EXPECT_EQ(oh[3], cd(1.0));
  EXPECT_EQ(StateVector::zero(3).nonzeros().size(), 1u);
  EXPECT_DOUBLE_EQ(StateVector::zero(3).leakage(), 1.0);
  EXPECT_THROW(StateVector::basis(3, 8), InvalidArgument);
}

TEST(Simulator, StorageLimits) {
  EXPECT_NO_THROW(StateVector::zero(StateVector::kMaxQubits));
  EXPECT_THROW(StateVector::zero(StateVector::kMaxQubits + 1), InvalidArgument);
  EXPECT_THROW(StateVector::zero(StateVector::kMaxDenseQubits + 1, true), InvalidArgument);
  EXPECT_THROW(StateVector::zero(0), InvalidArgument);
  const auto big = run(build_circuit({std::vector<double>(40, 1.0), DepthMode::kLog}));
  EXPECT_NEAR(big.norm_squared(), 1.0, 1e-12);
  EXPECT_EQ(big.nonzeros().size(), 41u);
}

TEST(Simulator, GatesMatchKroneckerOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 3;
    const Circuit c = random_circuit(rng, n, 12);
    std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
    const StateVector in = StateVector::basis(n, pick(rng), trial % 2 == 0);
    Vec expected = to_eigen(in);
    for (const Gate& g : c.gates) expected = gate_matrix(g, n) * expected;
    const Vec got = to_eigen(run(c, in));
    EXPECT_LT((got - expected).norm(), 1e-12) << "trial " << trial;
  }
}

TEST(Simulator, DenseAndSparseAgree) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = random_circuit(rng, 5, 30);
    const StateVector d = run(c, StateVector::zero(5, true));
    const StateVector s = run(c, StateVector::zero(5, false));
    EXPECT_TRUE(d.is_dense());
    EXPECT_FALSE(s.is_dense());
    EXPECT_LT((to_eigen(d) - to_eigen(s)).norm(), 1e-12);
    EXPECT_LT((to_eigen(d.to_sparse()) - to_eigen(s.to_dense())).norm(), 1e-12);
    EXPECT_NEAR(d.norm_squared(), 1.0, 1e-12);
  }
}

TEST(Simulator, OneHotCircuitsPrepareTheTarget) {
  std::mt19937_64 rng(23);
  for (int size = 1; size <= 18; ++size) {
    const auto t = random_unit(rng, size);
    for (DepthMode mode : {DepthMode::kLinear, DepthMode::kLog}) {
      const Circuit c = build_circuit(angles_for(t, mode));
      EXPECT_TRUE(is_one_hot_circuit(c));
      const StateVector psi = run(c);
      EXPECT_LT(psi.leakage(), 1e-14);
      EXPECT_NEAR(fidelity(psi, t), 1.0, 1e-10);
    }
  }
  EXPECT_FALSE(is_one_hot_circuit(random_circuit(rng, 3, 6)));
}

TEST(Simulator, ZeroAnglesStayOnFiducial) {
  const ModelParams p = make_params(7, 0.75, 0.5);
  const StateVector psi = run(build_circuit({{0.0, 0.0, 0.0}, DepthMode::kLinear}));
  EXPECT_EQ(psi.amplitude(0b1000), cd(1.0));
  // The fiducial string 2^3 is |1,6>.
  EXPECT_NEAR(encoded_expectation(psi, kN7, p), diagonal_element(1, 6, p), 1e-15);
}

TEST(Simulator, TruncatedN7AnglesReachTheGroundEnergy) {
  const ModelParams p = make_params(7, 0.75, 0.5);
  const auto t = n7_target(p);
  for (DepthMode mode : {DepthMode::kLinear, DepthMode::kLog}) {
    AngleSet a = angles_for(t, mode);
    for (double& th : a.thetas) th = std::trunc(th * 1e6) / 1e6;
    const double e = encoded_expectation(run(build_circuit(a)), kN7, p);
    EXPECT_NEAR(e, -3.34051529185, 1e-11) << to_string(mode);
  }
}

TEST(Simulator, EncodedEnergyMatchesFockExpectation) {
  std::mt19937_64 rng(24);
  const ModelParams p = make_params(9, -1.1, 0.3);
  const SectorConfig c{4, 0, 1};
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = random_unit(rng, 5);
    const StateVector psi = StateVector::from_one_hot(t);
    EXPECT_NEAR(encoded_expectation(psi, c, p), expectation(decode(t, c), p), 1e-12);
    EXPECT_LT((decode_state(psi, c) - decode(t, c)).norm(), 1e-15);
  }
  EXPECT_THROW(encoded_expectation(StateVector::fiducial(4), c, p), InvalidArgument);
}

TEST(Simulator, LeakageIsReported) {
  const ModelParams p = make_params(2, 0.5, 0.0);
  const SectorConfig c{1, 0, 0};
  const StateVector leaky = StateVector::basis(2, 0b11);
  EXPECT_DOUBLE_EQ(leaky.leakage(), 1.0);
  EXPECT_THROW(encoded_expectation(leaky, c, p), LeakageError);
}

TEST(Simulator, GroupCounts) {
  const ModelParams p = make_params(9, 0.7, 0.2);
  EXPECT_EQ(pauli_groups({1, 0, 1}, make_params(3, 0.7, 0.2)).size(), 2u);
  EXPECT_EQ(pauli_groups({2, 1, 0}, make_params(5, 0.7, 0.2)).size(), 3u);
  EXPECT_EQ(pauli_groups({4, 0, 1}, p).size(), 3u);
}

TEST(Simulator, PauliDecompositionMatchesTridiagonalBlock) {
  for (const auto& [n, c] : {std::pair{9, SectorConfig{4, 0, 1}}, std::pair{4, SectorConfig{1, 1, 1}},
                             std::pair{7, SectorConfig{3, 1, 0}}}) {
    const ModelParams p = make_params(n, 0.8, -0.35);
    const int q = c.m + 1;
    Mat h = Mat::Zero(Eigen::Index{1} << q, Eigen::Index{1} << q);
    for (const auto& g : pauli_groups(c, p)) {
      h += g.constant * Mat::Identity(h.rows(), h.cols());
      for (const auto& term : g.terms) {
        std::vector<Mat> ops(static_cast<std::size_t>(q), Mat::Identity(2, 2));
        for (const auto& [qubit, op] : term.ops) ops[static_cast<std::size_t>(qubit - 1)] = pauli(op);
        h += term.coeff * embed(ops);
      }
    }
    EXPECT_LT((h - h.adjoint()).norm(), 1e-12);
    for (int k = 0; k <= c.m; ++k) {
      const Eigen::Index ik = Eigen::Index{1} << k;
      const int nb = c.nu_b + 2 * k;
      EXPECT_NEAR(h(ik, ik).real(), diagonal_element(n - nb, nb, p), 1e-12);
      for (int l = 0; l <= c.m; ++l) {
        if (std::abs(l - k) > 1 || l == k) continue;
        const int lo = std::min(k, l);
        const int nb_lo = c.nu_b + 2 * lo;
        EXPECT_NEAR(std::abs(h(Eigen::Index{1} << l, ik)),
                    std::abs(pair_coupling(n - nb_lo, nb_lo, p)), 1e-12);
      }
    }
    // Exact group expectations agree with the block.
    std::mt19937_64 rng(25);
    const auto t = random_unit(rng, q);
    const StateVector psi = StateVector::from_one_hot(t);
    double sum = 0.0;
    for (const auto& g : pauli_groups(c, p)) sum += group_expectation(psi, g);
    EXPECT_NEAR(sum, encoded_expectation(psi, c, p), 1e-12);
    const Vec v = to_eigen(psi);
    EXPECT_NEAR((v.adjoint() * h * v)(0).real(), sum, 1e-12);
  }
}

TEST(Simulator, SamplingIsDeterministic) {
  const ModelParams p = make_params(7, 0.75, 0.5);
  const StateVector psi = StateVector::from_one_hot(n7_target(p));
  const auto groups = pauli_groups(kN7, p);
  const auto a = sampled_expectation(psi, groups, 5000, 99);
  const auto b = sampled_expectation(psi, groups, 5000, 99);
  const auto c = sampled_expectation(psi, groups, 5000, 100);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NE(a.estimate, c.estimate);
  EXPECT_THROW(sampled_expectation(psi, groups, 0, 1), InvalidArgument);
}

TEST(Simulator, DiagonalGroupOnBasisStateHasNoNoise) {
  const ModelParams p = make_params(7, 0.75, 0.5);
  const StateVector psi = StateVector::fiducial(4);
  const auto z = pauli_groups(kN7, p).front();
  ASSERT_EQ(z.basis, MeasurementGroup::Basis::kZ);
  const auto s = sampled_expectation(psi, {z}, 1000, 3);
  EXPECT_NEAR(s.estimate, group_expectation(psi, z), 1e-12);
  EXPECT_DOUBLE_EQ(s.std_error, 0.0);
}

TEST(Simulator, SampledEstimatorIsUnbiased) {
  const ModelParams p = make_params(7, 0.75, 0.5);
  std::mt19937_64 rng(26);
  const StateVector psi = StateVector::from_one_hot(random_unit(rng, 4));
  const auto groups = pauli_groups(kN7, p);
  const double exact = encoded_expectation(psi, kN7, p);
  const int runs = 50;
  double mean = 0.0, sq = 0.0, reported = 0.0;
  for (int seed = 0; seed < runs; ++seed) {
    const auto s = sampled_expectation(psi, groups, 2000, static_cast<std::uint64_t>(seed));
    mean += s.estimate;
    sq += s.estimate * s.estimate;
    reported += s.std_error;
  }
  mean /= runs;
  reported /= runs;
  const double spread = std::sqrt(sq / runs - mean * mean);
  EXPECT_LT(std::abs(mean - exact), 4.0 * reported / std::sqrt(runs));
  EXPECT_GT(spread / reported, 0.6);
  EXPECT_LT(spread / reported, 1.5);
}

TEST(Simulator, MillionShotsOnN7Ground) {
  const ModelParams p = make_params(7, 0.75, 0.5);
  const StateVector psi = run(build_circuit(linear_angles(n7_target(p))));
  const auto s = sampled_expectation(psi, pauli_groups(kN7, p), 1000000, 4242);
  EXPECT_LT(s.std_error, 2e-3);
  EXPECT_LT(std::abs(s.estimate + 3.3405152918507), 5.0 * s.std_error);
}

}  // namespace
}  // namespace lmg
