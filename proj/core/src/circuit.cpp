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


#include "lmg/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Dense>

#include "lmg/errors.hpp"

namespace lmg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFidelityTarget = 1.0 - 1e-10;

int floor_log2(int n) {
  int b = 0;
  while ((n >> (b + 1)) > 0) ++b;
  return b;
}

void require_target(std::span<const double> target) {
  if (target.empty()) {
    throw InvalidArgument("target vector is empty");
  }
  double sum = 0.0;
  for (double t : target) {
    if (!std::isfinite(t)) throw InvalidArgument("target has a non-finite entry");
    sum += t * t;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw InvalidArgument("target vector is not normalized (|T|^2 = " +
                          std::to_string(sum) + ")");
  }
}

void require_angles(const AngleSet& a) {
  for (double t : a.thetas) {
    if (!std::isfinite(t)) throw InvalidArgument("angle is not finite");
  }
}

// Largest-magnitude entry made positive.
std::vector<double> fix_global_sign(std::vector<double> amps) {
  auto it = std::max_element(amps.begin(), amps.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  if (it != amps.end() && *it < 0.0) {
    for (double& a : amps) a = -a;
  }
  return amps;
}

}  // namespace

std::string to_string(DepthMode mode) {
  return mode == DepthMode::kLinear ? "linear" : "log";
}

DepthMode parse_depth_mode(std::string_view text) {
  if (text == "linear") return DepthMode::kLinear;
  if (text == "log") return DepthMode::kLog;
  throw InvalidArgument("unknown depth mode '" + std::string(text) +
                        "' (expected linear or log)");
}

int control_qubit(int n, DepthMode mode) {
  if (n < 1) throw InvalidArgument("step index must be >= 1");
  if (mode == DepthMode::kLinear) return n;
  return n - (1 << floor_log2(n)) + 1;
}

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::kX:
      return "x";
    case GateKind::kRY:
      return "ry";
    case GateKind::kCRY:
      return "cry";
    case GateKind::kCX:
      return "cx";
  }
  return "unknown";
}

GateKind parse_gate_kind(std::string_view text) {
  if (text == "x") return GateKind::kX;
  if (text == "ry") return GateKind::kRY;
  if (text == "cry") return GateKind::kCRY;
  if (text == "cx") return GateKind::kCX;
  throw InvalidArgument("unknown gate kind '" + std::string(text) + "'");
}

int Circuit::two_qubit_gate_count() const {
  return static_cast<int>(std::count_if(
      gates.begin(), gates.end(), [](const Gate& g) { return g.is_two_qubit(); }));
}

int Circuit::two_qubit_layer_count() const {
  int count = 0;
  for (const auto& layer : layers) {
    for (int idx : layer) {
      if (idx >= 0 && idx < static_cast<int>(gates.size()) &&
          gates[static_cast<std::size_t>(idx)].is_two_qubit()) {
        ++count;
        break;
      }
    }
  }
  return count;
}

void validate(const Circuit& circ) {
  if (circ.num_qubits < 1 || circ.num_qubits > 64) {
    throw InvalidArgument("num_qubits must lie in [1, 64], got " +
                          std::to_string(circ.num_qubits));
  }
  auto in_range = [&](int q) { return q >= 1 && q <= circ.num_qubits; };
  for (std::size_t i = 0; i < circ.gates.size(); ++i) {
    const Gate& g = circ.gates[i];
    const std::string where = "gate " + std::to_string(i) + ": ";
    const bool wants_angle = g.kind == GateKind::kRY || g.kind == GateKind::kCRY;
    const bool wants_control = g.kind == GateKind::kCRY || g.kind == GateKind::kCX;
    if (wants_angle != g.angle.has_value()) {
      throw InvalidArgument(where + to_string(g.kind) +
                            (wants_angle ? " needs an angle" : " takes no angle"));
    }
    if (wants_control != g.control.has_value()) {
      throw InvalidArgument(where + to_string(g.kind) +
                            (wants_control ? " needs a control" : " takes no control"));
    }
    if (g.angle && !std::isfinite(*g.angle)) {
      throw InvalidArgument(where + "angle is not finite");
    }
    if (!in_range(g.target) || (g.control && !in_range(*g.control))) {
      throw InvalidArgument(where + "qubit out of range");
    }
    if (g.control && *g.control == g.target) {
      throw InvalidArgument(where + "control equals target");
    }
  }

  std::vector<int> seen(circ.gates.size(), 0);
  std::vector<int> last_on_qubit(static_cast<std::size_t>(circ.num_qubits) + 1, -1);
  for (std::size_t l = 0; l < circ.layers.size(); ++l) {
    std::set<int> busy;
    for (int idx : circ.layers[l]) {
      if (idx < 0 || idx >= static_cast<int>(circ.gates.size())) {
        throw InvalidArgument("layer " + std::to_string(l) +
                              " references unknown gate " + std::to_string(idx));
      }
      if (seen[static_cast<std::size_t>(idx)]++) {
        throw InvalidArgument("gate " + std::to_string(idx) +
                              " appears in more than one layer slot");
      }
      const Gate& g = circ.gates[static_cast<std::size_t>(idx)];
      std::vector<int> qubits{g.target};
      if (g.control) qubits.push_back(*g.control);
      for (int q : qubits) {
        if (!busy.insert(q).second) {
          throw InvalidArgument("layer " + std::to_string(l) +
                                " touches qubit " + std::to_string(q) + " twice");
        }
        int& last = last_on_qubit[static_cast<std::size_t>(q)];
        if (idx < last) {
          throw InvalidArgument("layer order contradicts gate order on qubit " +
                                std::to_string(q));
        }
        last = idx;
      }
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw InvalidArgument("gate " + std::to_string(i) + " is in no layer");
    }
  }
}

Circuit build_circuit(const AngleSet& angles) {
  require_angles(angles);
  const int m = angles.m();
  Circuit circ;
  circ.num_qubits = m + 1;
  circ.gates.push_back(Gate{GateKind::kX, std::nullopt, std::nullopt, 1});
  circ.layers.push_back({0});

  auto emit_block = [&](int first, int last) {
    std::vector<int> cry_layer;
    std::vector<int> cx_layer;
    for (int i = first; i <= last; ++i) {
      const int f = control_qubit(i, angles.mode);
      cry_layer.push_back(static_cast<int>(circ.gates.size()));
      circ.gates.push_back(
          Gate{GateKind::kCRY, angles.thetas[static_cast<std::size_t>(i - 1)], f, i + 1});
    }
    for (int i = first; i <= last; ++i) {
      const int f = control_qubit(i, angles.mode);
      cx_layer.push_back(static_cast<int>(circ.gates.size()));
      circ.gates.push_back(Gate{GateKind::kCX, std::nullopt, i + 1, f});
    }
    circ.layers.push_back(std::move(cry_layer));
    circ.layers.push_back(std::move(cx_layer));
  };

  if (angles.mode == DepthMode::kLinear) {
    for (int i = 1; i <= m; ++i) emit_block(i, i);
  } else {
    for (int first = 1; first <= m; first *= 2) {
      emit_block(first, std::min(2 * first - 1, m));
    }
  }
  return circ;
}

std::vector<double> circuit_amplitudes(const AngleSet& angles) {
  require_angles(angles);
  const int m = angles.m();
  std::vector<double> x(static_cast<std::size_t>(m) + 1, 0.0);
  x[0] = 1.0;
  for (int i = 1; i <= m; ++i) {
    const auto f = static_cast<std::size_t>(control_qubit(i, angles.mode) - 1);
    const double half = 0.5 * angles.thetas[static_cast<std::size_t>(i - 1)];
    const double a = x[f];
    x[f] = a * std::cos(half);
    x[static_cast<std::size_t>(i)] = a * std::sin(half);
  }
  std::reverse(x.begin(), x.end());
  return x;
}

std::vector<double> encode(const FockVector& psi, const SectorConfig& c) {
  if (psi.n() != c.n() || psi.parity() != c.parity()) {
    throw InvalidArgument("state does not live in sector " + to_string(c));
  }
  if (!psi.is_normalized()) {
    throw InvalidArgument("state is not normalized");
  }
  return {psi.amps().begin(), psi.amps().end()};
}

FockVector decode(std::span<const double> target, const SectorConfig& c) {
  if (target.size() != static_cast<std::size_t>(c.m) + 1) {
    throw InvalidArgument("target length " + std::to_string(target.size()) +
                          " does not match sector " + to_string(c));
  }
  return FockVector(c.n(), c.parity(), {target.begin(), target.end()});
}

AngleSet linear_angles(std::span<const double> target) {
  require_target(target);
  const int m = static_cast<int>(target.size()) - 1;
  AngleSet out{std::vector<double>(static_cast<std::size_t>(m), 0.0),
               DepthMode::kLinear};
  // c_k = target[k - 1]; tail[k] = sum_{i <= k} c_i^2.
  std::vector<double> tail(static_cast<std::size_t>(m) + 2, 0.0);
  for (int k = 1; k <= m + 1; ++k) {
    const double ck = target[static_cast<std::size_t>(k - 1)];
    tail[static_cast<std::size_t>(k)] = tail[static_cast<std::size_t>(k - 1)] + ck * ck;
  }
  for (int j = 1; j <= m; ++j) {
    const int k = m + 2 - j;
    const double denom = std::sqrt(tail[static_cast<std::size_t>(k)]);
    double& theta = out.thetas[static_cast<std::size_t>(j - 1)];
    if (denom == 0.0) {
      theta = 0.0;
      continue;
    }
    const double q =
        std::clamp(target[static_cast<std::size_t>(k - 1)] / denom, -1.0, 1.0);
    if (j < m) {
      theta = 2.0 * std::acos(q);
    } else {
      const double sgn = target[0] < 0.0 ? -1.0 : 1.0;
      theta = 2.0 * sgn * (std::acos(q) - kPi) + 2.0 * kPi;
    }
  }
  return out;
}

AngleSet log_angles(std::span<const double> target) {
  require_target(target);
  const int m = static_cast<int>(target.size()) - 1;
  std::vector<double> x(target.rbegin(), target.rend());
  AngleSet out{std::vector<double>(static_cast<std::size_t>(m), 0.0),
               DepthMode::kLog};
  for (int i = m; i >= 1; --i) {
    const auto f = static_cast<std::size_t>(control_qubit(i, DepthMode::kLog) - 1);
    const auto t = static_cast<std::size_t>(i);
    out.thetas[static_cast<std::size_t>(i - 1)] = 2.0 * std::atan2(x[t], x[f]);
    x[f] = std::hypot(x[f], x[t]);
    x[t] = 0.0;
  }
  if (product_form_fidelity(out, target) < kFidelityTarget) {
    return refine_angles(std::move(out), target);
  }
  return out;
}

AngleSet angles_for(std::span<const double> target, DepthMode mode) {
  return mode == DepthMode::kLinear ? linear_angles(target) : log_angles(target);
}

double product_form_fidelity(const AngleSet& angles,
                             std::span<const double> target) {
  const auto amps = circuit_amplitudes(angles);
  if (amps.size() != target.size()) {
    throw InvalidArgument("angle count does not match target length");
  }
  double overlap = 0.0;
  for (std::size_t k = 0; k < amps.size(); ++k) overlap += amps[k] * target[k];
  return overlap * overlap;
}

AngleSet refine_angles(AngleSet start, std::span<const double> target,
                       int max_iterations) {
  require_target(target);
  if (static_cast<std::size_t>(start.m()) + 1 != target.size()) {
    throw InvalidArgument("angle count does not match target length");
  }
  const int m = start.m();
  const int rows = m + 1;
  auto residual = [&](const std::vector<double>& th) {
    const auto a = circuit_amplitudes(AngleSet{th, start.mode});
    Eigen::VectorXd r(rows);
    for (int k = 0; k < rows; ++k) r(k) = a[static_cast<std::size_t>(k)] - target[static_cast<std::size_t>(k)];
    return r;
  };

  std::vector<double> th = start.thetas;
  Eigen::VectorXd r = residual(th);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  const double h = 1e-7;
  for (int it = 0; it < max_iterations; ++it) {
    if (product_form_fidelity(AngleSet{th, start.mode}, target) >= kFidelityTarget &&
        cost < 1e-20) {
      break;
    }
    Eigen::MatrixXd jac(rows, m);
    for (int j = 0; j < m; ++j) {
      auto tp = th;
      auto tm = th;
      tp[static_cast<std::size_t>(j)] += h;
      tm[static_cast<std::size_t>(j)] -= h;
      jac.col(j) = (residual(tp) - residual(tm)) / (2.0 * h);
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 30 && !stepped; ++tries) {
      Eigen::MatrixXd a = jtj;
      a.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd step = a.ldlt().solve(-jtr);
      auto trial = th;
      for (int j = 0; j < m; ++j) trial[static_cast<std::size_t>(j)] += step(j);
      const Eigen::VectorXd rt = residual(trial);
      if (rt.squaredNorm() < cost) {
        th = std::move(trial);
        r = rt;
        cost = rt.squaredNorm();
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!stepped) break;
  }
  AngleSet out{std::move(th), start.mode};
  const double fid = product_form_fidelity(out, target);
  if (!(fid >= kFidelityTarget)) {
    throw NumericFailure("angle refinement stalled at fidelity " +
                         std::to_string(fid));
  }
  return out;
}

AngleSet canonical_angles(const AngleSet& angles) {
  const auto amps = fix_global_sign(circuit_amplitudes(angles));
  return angles_for(amps, angles.mode);
}

double angle_distance(double a, double b) {
  const double period = 4.0 * kPi;
  double d = std::fmod(a - b, period);
  if (d > 0.5 * period) d -= period;
  if (d < -0.5 * period) d += period;
  return std::abs(d);
}

bool gauge_equivalent(const AngleSet& a, const AngleSet& b, double tol) {
  if (a.mode != b.mode || a.m() != b.m()) return false;
  const auto ca = canonical_angles(a);
  const auto cb = canonical_angles(b);
  for (int i = 0; i < ca.m(); ++i) {
    if (angle_distance(ca.thetas[static_cast<std::size_t>(i)],
                       cb.thetas[static_cast<std::size_t>(i)]) > tol) {
      return false;
    }
  }
  return true;
}

}  // namespace lmg
