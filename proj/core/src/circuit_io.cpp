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


#include "lmg/circuit_io.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "lmg/errors.hpp"

namespace lmg {

namespace {

using nlohmann::json;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) {
    throw InvalidArgument(std::string(what) + " must be an integer");
  }
  return j.get<int>();
}

}  // namespace

std::string circuit_to_json(const Circuit& circ, int indent) {
  json gates = json::array();
  for (const Gate& g : circ.gates) {
    json item;
    item["kind"] = to_string(g.kind);
    if (g.angle) item["angle"] = *g.angle;
    if (g.control) item["control"] = *g.control;
    item["target"] = g.target;
    gates.push_back(std::move(item));
  }
  json doc;
  doc["num_qubits"] = circ.num_qubits;
  doc["gates"] = std::move(gates);
  doc["layers"] = circ.layers;
  return doc.dump(indent);
}

Circuit circuit_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("circuit JSON does not parse: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("num_qubits") || !doc.contains("gates") ||
      !doc.contains("layers")) {
    throw InvalidArgument("circuit JSON needs num_qubits, gates and layers");
  }
  Circuit circ;
  circ.num_qubits = as_int(doc["num_qubits"], "num_qubits");
  if (!doc["gates"].is_array() || !doc["layers"].is_array()) {
    throw InvalidArgument("gates and layers must be arrays");
  }
  for (const json& item : doc["gates"]) {
    if (!item.is_object() || !item.contains("kind") || !item["kind"].is_string() ||
        !item.contains("target")) {
      throw InvalidArgument("each gate needs a string kind and a target");
    }
    Gate g;
    g.kind = parse_gate_kind(item["kind"].get<std::string>());
    g.target = as_int(item["target"], "target");
    if (item.contains("control")) g.control = as_int(item["control"], "control");
    if (item.contains("angle")) {
      if (!item["angle"].is_number()) throw InvalidArgument("angle must be a number");
      g.angle = item["angle"].get<double>();
    }
    circ.gates.push_back(g);
  }
  for (const json& layer : doc["layers"]) {
    if (!layer.is_array()) throw InvalidArgument("each layer must be an array");
    std::vector<int> idx;
    for (const json& v : layer) idx.push_back(as_int(v, "layer entry"));
    circ.layers.push_back(std::move(idx));
  }
  validate(circ);
  return circ;
}

std::string circuit_to_qasm(const Circuit& circ) {
  validate(circ);
  std::ostringstream out;
  out << "OPENQASM 3;\n"
      << "include \"stdgates.inc\";\n"
      << "qubit[" << circ.num_qubits << "] q;\n";
  auto q = [](int qubit) { return "q[" + std::to_string(qubit - 1) + "]"; };
  for (const auto& layer : circ.layers) {
    for (int idx : layer) {
      const Gate& g = circ.gates[static_cast<std::size_t>(idx)];
      switch (g.kind) {
        case GateKind::kX:
          out << "x " << q(g.target) << ";\n";
          break;
        case GateKind::kRY:
          out << "ry(" << g17(*g.angle) << ") " << q(g.target) << ";\n";
          break;
        case GateKind::kCRY:
          out << "ctrl @ ry(" << g17(*g.angle) << ") " << q(*g.control) << ", "
              << q(g.target) << ";\n";
          break;
        case GateKind::kCX:
          out << "cx " << q(*g.control) << ", " << q(g.target) << ";\n";
          break;
      }
    }
  }
  return out.str();
}

std::string export_circuit(const Circuit& circ, std::string_view format) {
  if (format == "json") return circuit_to_json(circ);
  if (format == "qasm") return circuit_to_qasm(circ);
  throw InvalidArgument("unknown circuit format '" + std::string(format) +
                        "' (expected json or qasm)");
}

}  // namespace lmg
