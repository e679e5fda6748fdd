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


#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lmg/circuit.hpp"
#include "lmg/model.hpp"

namespace lmg {

/// Qubit register state. Basis index bit (num_qubits - q) holds qubit q, so
/// qubit 1 is the most significant bit. Dense storage is capped at
/// kMaxDenseQubits; the sparse form keeps only nonzero amplitudes and
/// reaches 64 qubits.
class StateVector {
 public:
  using Amplitude = std::complex<double>;
  static constexpr int kMaxDenseQubits = 20;
  static constexpr int kMaxQubits = 64;

  StateVector() = default;

  static StateVector zero(int num_qubits, bool dense = false);
  static StateVector basis(int num_qubits, std::uint64_t index, bool dense = false);
  /// |1 0 ... 0>: the one-hot string with its 1 on qubit 1.
  static StateVector fiducial(int num_qubits, bool dense = false);
  /// Real one-hot superposition sum_k T[k] |2^k> on T.size() qubits.
  static StateVector from_one_hot(std::span<const double> target, bool dense = false);

  int num_qubits() const noexcept { return n_; }
  bool is_dense() const noexcept { return dense_; }

  Amplitude amplitude(std::uint64_t index) const;
  /// Nonzero amplitudes ordered by basis index.
  std::vector<std::pair<std::uint64_t, Amplitude>> nonzeros() const;
  double norm_squared() const;

  StateVector to_dense() const;
  StateVector to_sparse() const;

  void apply(const Gate& gate);

  /// a_k = <2^k|psi> for k = 0..num_qubits - 1.
  std::vector<Amplitude> one_hot_amplitudes() const;
  /// Probability outside the Hamming-weight-1 strings.
  double leakage() const;

 private:
  std::uint64_t bit(int qubit) const;
  void check_index(std::uint64_t index) const;

  int n_ = 0;
  bool dense_ = false;
  std::vector<Amplitude> dense_amps_;
  std::map<std::uint64_t, Amplitude> sparse_;
};

/// True for X on qubit 1 followed by CRY(c -> t) / CX(t -> c) pairs whose
/// target t is untouched until its CRY; such circuits map |0...0> into the
/// one-hot subspace.
bool is_one_hot_circuit(const Circuit& circ);

/// Runs the gates in layer order. The default input is |0...0>, which the
/// X preparation turns into the fiducial one-hot string. For one-hot
/// circuits run from the default input, leakage above 1e-10 raises
/// LeakageError.
StateVector run(const Circuit& circ, std::optional<StateVector> input = std::nullopt);

/// |<T|psi>|^2 over the one-hot encoding of T.
double fidelity(const StateVector& psi, std::span<const double> target);

/// <H> of the sector state the register encodes, from the tridiagonal
/// encoded Hamiltonian. Throws LeakageError when more than 1e-10 of the
/// probability sits outside the one-hot subspace.
double encoded_expectation(const StateVector& psi, const SectorConfig& c,
                           const ModelParams& p);

/// Unnormalized sector vector read off the one-hot amplitudes (real parts).
FockVector decode_state(const StateVector& psi, const SectorConfig& c);

/// One Pauli string, e.g. {{2, 'X'}, {3, 'X'}}, with a real weight.
struct PauliTerm {
  double coeff = 0.0;
  std::vector<std::pair<int, char>> ops;
};

/// Commuting terms measured in one basis setting. kZ reads the
/// computational basis; kBond rotates every listed qubit pair into the
/// eigenbasis of (XX + YY)/2.
struct MeasurementGroup {
  enum class Basis { kZ, kBond };
  Basis basis = Basis::kZ;
  std::string name;
  double constant = 0.0;
  std::vector<PauliTerm> terms;
  /// Bond groups only: qubit pairs and their weights t_k.
  std::vector<std::pair<int, int>> bonds;
  std::vector<double> bond_weights;
};

/// Qubit-wise commuting partition of the encoded Hamiltonian: a Z group and
/// the even and odd bond groups of the hopping chain (3 groups for M >= 2).
std::vector<MeasurementGroup> pauli_groups(const SectorConfig& c,
                                           const ModelParams& p);

/// Exact <group> by applying each Pauli string to psi.
double group_expectation(const StateVector& psi, const MeasurementGroup& group);

struct SampledEnergy {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Shot-based estimate with `shots` shots per group; counts are drawn from a
/// multinomial seeded by (seed, group index), so equal seeds give equal
/// results.
SampledEnergy sampled_expectation(const StateVector& psi,
                                  const std::vector<MeasurementGroup>& groups,
                                  std::int64_t shots, std::uint64_t seed);

}  // namespace lmg
