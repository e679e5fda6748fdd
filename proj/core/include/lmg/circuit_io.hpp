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

#include <string>
#include <string_view>

#include "lmg/circuit.hpp"

namespace lmg {

/// {"num_qubits": n, "gates": [{"kind", "angle"?, "control"?, "target"}],
///  "layers": [[gate index, ...], ...]}. Doubles are written in shortest
/// round-trip form, so export followed by import is bit-exact.
std::string circuit_to_json(const Circuit& circ, int indent = 2);

/// Parses and validates. Throws InvalidArgument on malformed input.
Circuit circuit_from_json(std::string_view text);

/// OpenQASM 3 with angles printed to 17 significant digits. Qubit q of the
/// IR is q[q - 1] in the register.
std::string circuit_to_qasm(const Circuit& circ);

/// format is "json" or "qasm".
std::string export_circuit(const Circuit& circ, std::string_view format);

}  // namespace lmg
