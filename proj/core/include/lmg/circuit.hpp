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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lmg/model.hpp"

namespace lmg {

// Qubits are numbered 1..num_qubits, qubit 1 being the leftmost bit of the
// big-endian bitstring. The one-hot string 2^k has its 1 on qubit
// num_qubits - k and carries Fock state |2M + nu_a - 2k, nu_b + 2k>.

enum class DepthMode { kLinear, kLog };

std::string to_string(DepthMode mode);
/// Accepts "linear" or "log".
DepthMode parse_depth_mode(std::string_view text);

/// Control qubit of step n (1-based): n in linear mode,
/// n - 2^floor(log2 n) + 1 in log mode.
int control_qubit(int n, DepthMode mode);

struct AngleSet {
  std::vector<double> thetas;
  DepthMode mode = DepthMode::kLinear;

  int m() const noexcept { return static_cast<int>(thetas.size()); }
};

enum class GateKind { kX, kRY, kCRY, kCX };

std::string to_string(GateKind kind);
GateKind parse_gate_kind(std::string_view text);

struct Gate {
  GateKind kind = GateKind::kX;
  std::optional<double> angle;
  std::optional<int> control;
  int target = 1;

  bool is_two_qubit() const noexcept { return control.has_value(); }
  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
  /// Gate indices that may run in parallel; layers execute in order.
  std::vector<std::vector<int>> layers;

  int two_qubit_gate_count() const;
  /// Layers holding at least one two-qubit gate.
  int two_qubit_layer_count() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Throws InvalidArgument on malformed gates, out-of-range qubits, or layers
/// that are not a partition of the gates into qubit-disjoint groups.
void validate(const Circuit& circ);

/// X on qubit 1, then for step i = 1..M the pair CRY(theta_i) from qubit
/// f(i) onto qubit i + 1 and CX from qubit i + 1 back onto f(i). Log mode
/// groups steps [2^b, 2^(b+1)) into one CRY layer and one CX layer.
Circuit build_circuit(const AngleSet& angles);

/// Circuit output over the one-hot support, index k <-> 2^k, evaluated from
/// the product form (each step splits the amplitude on f(i) into
/// cos(theta_i/2) kept and sin(theta_i/2) moved to qubit i + 1).
std::vector<double> circuit_amplitudes(const AngleSet& angles);

/// Target vector T with T[k] the amplitude of |2M + nu_a - 2k, nu_b + 2k>.
std::vector<double> encode(const FockVector& psi, const SectorConfig& c);
FockVector decode(std::span<const double> target, const SectorConfig& c);

/// Closed-form hyperspherical angles for the linear-depth circuit.
AngleSet linear_angles(std::span<const double> target);

/// Angles for the log-depth circuit by merging the splitting tree from the
/// last step back to the first, theta_i = 2 atan2(moved, kept). Falls back
/// to refine_angles if the result misses the target.
AngleSet log_angles(std::span<const double> target);

/// Angles for either mode.
AngleSet angles_for(std::span<const double> target, DepthMode mode);

/// Damped Gauss-Newton on circuit_amplitudes(theta) - target. Throws
/// NumericFailure if fidelity 1 - 1e-10 is not reached within max_iterations.
AngleSet refine_angles(AngleSet start, std::span<const double> target,
                       int max_iterations = 200);

/// |<T|circuit_amplitudes(angles)>|^2.
double product_form_fidelity(const AngleSet& angles,
                             std::span<const double> target);

/// Representative of the gauge class of `angles`: the angles that the mode's
/// own construction assigns to the state the circuit prepares. Two angle
/// sets prepare the same state iff their canonical forms agree modulo 4 pi.
AngleSet canonical_angles(const AngleSet& angles);

/// Distance between two angles on the 4 pi circle RY lives on.
double angle_distance(double a, double b);

bool gauge_equivalent(const AngleSet& a, const AngleSet& b, double tol);

}  // namespace lmg
