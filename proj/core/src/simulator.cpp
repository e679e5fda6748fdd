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


#include "lmg/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "lmg/errors.hpp"

namespace lmg {

namespace {

using Amplitude = StateVector::Amplitude;
using SparseMap = std::map<std::uint64_t, Amplitude>;

constexpr double kLeakageTol = 1e-10;

void require_qubits(int n, bool dense) {
  if (n < 1 || n > StateVector::kMaxQubits) {
    throw InvalidArgument("register size must lie in [1, 64], got " +
                          std::to_string(n));
  }
  if (dense && n > StateVector::kMaxDenseQubits) {
    throw InvalidArgument("dense state vectors are capped at " +
                          std::to_string(StateVector::kMaxDenseQubits) +
                          " qubits, got " + std::to_string(n));
  }
}

int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

std::uint64_t qubit_bit(int n, int q) { return std::uint64_t{1} << (n - q); }

// Pauli string action on one basis index: P|idx> = phase |image>.
std::pair<std::uint64_t, Amplitude> pauli_image(
    int n, std::uint64_t idx, const std::vector<std::pair<int, char>>& ops) {
  Amplitude phase{1.0, 0.0};
  for (const auto& [q, op] : ops) {
    const std::uint64_t b = qubit_bit(n, q);
    const bool set = (idx & b) != 0;
    switch (op) {
      case 'X':
        idx ^= b;
        break;
      case 'Y':
        phase *= set ? Amplitude{0.0, -1.0} : Amplitude{0.0, 1.0};
        idx ^= b;
        break;
      case 'Z':
        if (set) phase = -phase;
        break;
      case 'I':
        break;
      default:
        throw InvalidArgument(std::string("unknown Pauli operator '") + op + "'");
    }
  }
  return {idx, phase};
}

// Rotates the pair (qa, qb) into the (XX + YY)/2 eigenbasis:
// |01> <- (|01> + |10>)/sqrt2 (eigenvalue +1), |10> <- (|01> - |10>)/sqrt2.
SparseMap rotate_bond(const SparseMap& in, int n, int qa, int qb) {
  const std::uint64_t ba = qubit_bit(n, qa);
  const std::uint64_t bb = qubit_bit(n, qb);
  const double r = 1.0 / std::sqrt(2.0);
  SparseMap out;
  for (const auto& [idx, a] : in) {
    const bool xa = idx & ba;
    const bool xb = idx & bb;
    if (xa == xb) {
      out[idx] += a;
      continue;
    }
    const std::uint64_t base = idx & ~(ba | bb);
    const std::uint64_t i01 = base | bb;
    const std::uint64_t i10 = base | ba;
    // Input |01> feeds +r into both; input |10> feeds +r into 01, -r into 10.
    out[i01] += r * a;
    out[i10] += (xb ? r : -r) * a;
  }
  return out;
}

double bond_value(std::uint64_t idx, int n, const MeasurementGroup& g) {
  double v = 0.0;
  for (std::size_t b = 0; b < g.bonds.size(); ++b) {
    const bool xa = idx & qubit_bit(n, g.bonds[b].first);
    const bool xb = idx & qubit_bit(n, g.bonds[b].second);
    if (!xa && xb) v += g.bond_weights[b];
    if (xa && !xb) v -= g.bond_weights[b];
  }
  return v;
}

double z_value(std::uint64_t idx, int n, const MeasurementGroup& g) {
  double v = g.constant;
  for (const PauliTerm& t : g.terms) {
    double sign = 1.0;
    for (const auto& [q, op] : t.ops) {
      if (op == 'Z' && (idx & qubit_bit(n, q))) sign = -sign;
    }
    v += t.coeff * sign;
  }
  return v;
}

std::mt19937_64 make_rng(std::uint64_t seed, std::size_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

}  // namespace

StateVector StateVector::zero(int num_qubits, bool dense) {
  return basis(num_qubits, 0, dense);
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index, bool dense) {
  require_qubits(num_qubits, dense);
  StateVector s;
  s.n_ = num_qubits;
  s.dense_ = dense;
  s.check_index(index);
  if (dense) {
    s.dense_amps_.assign(std::size_t{1} << num_qubits, Amplitude{});
    s.dense_amps_[index] = 1.0;
  } else {
    s.sparse_[index] = 1.0;
  }
  return s;
}

StateVector StateVector::fiducial(int num_qubits, bool dense) {
  require_qubits(num_qubits, dense);
  return basis(num_qubits, qubit_bit(num_qubits, 1), dense);
}

StateVector StateVector::from_one_hot(std::span<const double> target, bool dense) {
  const int n = static_cast<int>(target.size());
  StateVector s = zero(n, dense);
  if (dense) {
    s.dense_amps_[0] = 0.0;
  } else {
    s.sparse_.clear();
  }
  for (int k = 0; k < n; ++k) {
    const double t = target[static_cast<std::size_t>(k)];
    if (t == 0.0) continue;
    const std::uint64_t idx = std::uint64_t{1} << k;
    if (dense) {
      s.dense_amps_[idx] = t;
    } else {
      s.sparse_[idx] = t;
    }
  }
  return s;
}

void StateVector::check_index(std::uint64_t index) const {
  if (n_ < 64 && (index >> n_) != 0) {
    throw InvalidArgument("basis index out of range for " + std::to_string(n_) +
                          " qubits");
  }
}

std::uint64_t StateVector::bit(int qubit) const {
  if (qubit < 1 || qubit > n_) {
    throw InvalidArgument("qubit " + std::to_string(qubit) + " out of range");
  }
  return qubit_bit(n_, qubit);
}

StateVector::Amplitude StateVector::amplitude(std::uint64_t index) const {
  check_index(index);
  if (dense_) return dense_amps_[index];
  auto it = sparse_.find(index);
  return it == sparse_.end() ? Amplitude{} : it->second;
}

std::vector<std::pair<std::uint64_t, StateVector::Amplitude>>
StateVector::nonzeros() const {
  std::vector<std::pair<std::uint64_t, Amplitude>> out;
  if (dense_) {
    for (std::size_t i = 0; i < dense_amps_.size(); ++i) {
      if (dense_amps_[i] != Amplitude{}) out.emplace_back(i, dense_amps_[i]);
    }
  } else {
    for (const auto& [i, a] : sparse_) {
      if (a != Amplitude{}) out.emplace_back(i, a);
    }
  }
  return out;
}

double StateVector::norm_squared() const {
  double s = 0.0;
  if (dense_) {
    for (const auto& a : dense_amps_) s += std::norm(a);
  } else {
    for (const auto& [i, a] : sparse_) s += std::norm(a);
  }
  return s;
}

StateVector StateVector::to_dense() const {
  if (dense_) return *this;
  StateVector s = zero(n_, true);
  s.dense_amps_[0] = 0.0;
  for (const auto& [i, a] : sparse_) s.dense_amps_[i] = a;
  return s;
}

StateVector StateVector::to_sparse() const {
  if (!dense_) return *this;
  StateVector s;
  s.n_ = n_;
  s.dense_ = false;
  for (const auto& [i, a] : nonzeros()) s.sparse_[i] = a;
  return s;
}

void StateVector::apply(const Gate& gate) {
  const std::uint64_t tb = bit(gate.target);
  const std::uint64_t cb = gate.control ? bit(*gate.control) : 0;
  if (gate.control && cb == tb) throw InvalidArgument("control equals target");
  const bool rotation = gate.kind == GateKind::kRY || gate.kind == GateKind::kCRY;
  if (rotation && !gate.angle) throw InvalidArgument("rotation without angle");
  const bool controlled = gate.kind == GateKind::kCRY || gate.kind == GateKind::kCX;
  if (controlled && !gate.control) throw InvalidArgument("controlled gate without control");
  const double c = rotation ? std::cos(0.5 * *gate.angle) : 0.0;
  const double s = rotation ? std::sin(0.5 * *gate.angle) : 0.0;

  if (dense_) {
    for (std::uint64_t i = 0; i < dense_amps_.size(); ++i) {
      if (i & tb) continue;
      if (controlled && !(i & cb)) continue;
      const std::uint64_t j = i | tb;
      Amplitude& a0 = dense_amps_[i];
      Amplitude& a1 = dense_amps_[j];
      if (rotation) {
        const Amplitude n0 = c * a0 - s * a1;
        const Amplitude n1 = s * a0 + c * a1;
        a0 = n0;
        a1 = n1;
      } else {
        std::swap(a0, a1);
      }
    }
    return;
  }

  SparseMap out;
  for (const auto& [i, a] : sparse_) {
    if (controlled && !(i & cb)) {
      out[i] += a;
      continue;
    }
    if (!rotation) {
      out[i ^ tb] += a;
      continue;
    }
    if (i & tb) {
      out[i & ~tb] += -s * a;
      out[i] += c * a;
    } else {
      out[i] += c * a;
      out[i | tb] += s * a;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == Amplitude{}; });
  sparse_ = std::move(out);
}

std::vector<StateVector::Amplitude> StateVector::one_hot_amplitudes() const {
  std::vector<Amplitude> out(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) out[static_cast<std::size_t>(k)] = amplitude(std::uint64_t{1} << k);
  return out;
}

double StateVector::leakage() const {
  double s = 0.0;
  for (const auto& [i, a] : nonzeros()) {
    if (popcount(i) != 1) s += std::norm(a);
  }
  return s;
}

bool is_one_hot_circuit(const Circuit& circ) {
  const auto& g = circ.gates;
  if (g.empty() || g[0].kind != GateKind::kX || g[0].target != 1) return false;
  std::set<int> touched{1};
  // CRY target -> control, for pairs still waiting on their CX.
  std::map<int, int> open;
  std::set<int> busy;
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (g[i].kind == GateKind::kCRY) {
      const int ctrl = *g[i].control;
      const int tgt = g[i].target;
      if (!touched.contains(ctrl) || touched.contains(tgt) || busy.contains(ctrl)) return false;
      touched.insert(tgt);
      busy.insert(ctrl);
      busy.insert(tgt);
      open[tgt] = ctrl;
    } else if (g[i].kind == GateKind::kCX) {
      const auto it = open.find(*g[i].control);
      if (it == open.end() || it->second != g[i].target) return false;
      busy.erase(it->first);
      busy.erase(it->second);
      open.erase(it);
    } else {
      return false;
    }
  }
  return open.empty();
}

StateVector run(const Circuit& circ, std::optional<StateVector> input) {
  validate(circ);
  const bool from_default = !input.has_value();
  StateVector psi = from_default ? StateVector::zero(circ.num_qubits) : std::move(*input);
  if (psi.num_qubits() != circ.num_qubits) {
    throw InvalidArgument("input has " + std::to_string(psi.num_qubits()) +
                          " qubits, circuit has " + std::to_string(circ.num_qubits));
  }
  for (const auto& layer : circ.layers) {
    for (int idx : layer) psi.apply(circ.gates[static_cast<std::size_t>(idx)]);
  }
  if (from_default && is_one_hot_circuit(circ)) {
    const double leak = psi.leakage();
    if (leak > kLeakageTol) {
      throw LeakageError("one-hot circuit leaked " + std::to_string(leak) +
                         " out of the Hamming-weight-1 subspace");
    }
  }
  return psi;
}

double fidelity(const StateVector& psi, std::span<const double> target) {
  if (target.size() != static_cast<std::size_t>(psi.num_qubits())) {
    throw InvalidArgument("target length does not match register size");
  }
  Amplitude overlap{};
  for (std::size_t k = 0; k < target.size(); ++k) {
    overlap += target[k] * psi.amplitude(std::uint64_t{1} << k);
  }
  return std::norm(overlap);
}

double encoded_expectation(const StateVector& psi, const SectorConfig& c,
                           const ModelParams& p) {
  if (c.n() != p.n) {
    throw InvalidArgument("sector " + to_string(c) + " does not belong to N=" +
                          std::to_string(p.n));
  }
  if (psi.num_qubits() != c.m + 1) {
    throw InvalidArgument("register has " + std::to_string(psi.num_qubits()) +
                          " qubits, sector needs " + std::to_string(c.m + 1));
  }
  const double leak = psi.leakage();
  if (leak > kLeakageTol) {
    throw LeakageError("state leaks " + std::to_string(leak) +
                       " outside the one-hot subspace");
  }
  const auto a = psi.one_hot_amplitudes();
  double e = 0.0;
  for (int k = 0; k <= c.m; ++k) {
    const int na = 2 * c.m + c.nu_a - 2 * k;
    const int nb = c.nu_b + 2 * k;
    const auto uk = static_cast<std::size_t>(k);
    e += diagonal_element(na, nb, p) * std::norm(a[uk]);
    if (k < c.m) {
      e += 2.0 * pair_coupling(na, nb, p) * std::real(std::conj(a[uk]) * a[uk + 1]);
    }
  }
  return e;
}

FockVector decode_state(const StateVector& psi, const SectorConfig& c) {
  if (psi.num_qubits() != c.m + 1) {
    throw InvalidArgument("register size does not match sector " + to_string(c));
  }
  std::vector<double> amps;
  for (const auto& a : psi.one_hot_amplitudes()) amps.push_back(a.real());
  return FockVector(c.n(), c.parity(), std::move(amps));
}

std::vector<MeasurementGroup> pauli_groups(const SectorConfig& c,
                                           const ModelParams& p) {
  if (c.n() != p.n) {
    throw InvalidArgument("sector " + to_string(c) + " does not belong to N=" +
                          std::to_string(p.n));
  }
  const int m = c.m;
  auto qubit = [&](int k) { return m + 1 - k; };
  MeasurementGroup z;
  z.basis = MeasurementGroup::Basis::kZ;
  z.name = "Z";
  for (int k = 0; k <= m; ++k) {
    const double d = diagonal_element(2 * m + c.nu_a - 2 * k, c.nu_b + 2 * k, p);
    z.constant += 0.5 * d;
    z.terms.push_back({-0.5 * d, {{qubit(k), 'Z'}}});
  }
  std::vector<MeasurementGroup> groups{z};
  for (int parity = 0; parity < 2; ++parity) {
    MeasurementGroup b;
    b.basis = MeasurementGroup::Basis::kBond;
    b.name = parity == 0 ? "XX+YY even" : "XX+YY odd";
    for (int k = parity; k < m; k += 2) {
      const double t = pair_coupling(2 * m + c.nu_a - 2 * k, c.nu_b + 2 * k, p);
      const int qa = qubit(k);
      const int qb = qubit(k + 1);
      b.bonds.emplace_back(qa, qb);
      b.bond_weights.push_back(t);
      b.terms.push_back({0.5 * t, {{qa, 'X'}, {qb, 'X'}}});
      b.terms.push_back({0.5 * t, {{qa, 'Y'}, {qb, 'Y'}}});
    }
    if (!b.bonds.empty()) groups.push_back(std::move(b));
  }
  return groups;
}

double group_expectation(const StateVector& psi, const MeasurementGroup& group) {
  const auto nz = psi.nonzeros();
  const double norm2 = psi.norm_squared();
  double e = group.constant * norm2;
  for (const PauliTerm& t : group.terms) {
    Amplitude acc{};
    for (const auto& [idx, a] : nz) {
      const auto [image, phase] = pauli_image(psi.num_qubits(), idx, t.ops);
      acc += std::conj(psi.amplitude(image)) * phase * a;
    }
    e += t.coeff * acc.real();
  }
  return e;
}

SampledEnergy sampled_expectation(const StateVector& psi,
                                  const std::vector<MeasurementGroup>& groups,
                                  std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) {
    throw InvalidArgument("shots must be >= 1, got " + std::to_string(shots));
  }
  const int n = psi.num_qubits();
  SparseMap base;
  for (const auto& [i, a] : psi.nonzeros()) base[i] = a;

  SampledEnergy out;
  double variance = 0.0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const MeasurementGroup& g = groups[gi];
    SparseMap rotated = base;
    if (g.basis == MeasurementGroup::Basis::kBond) {
      for (const auto& [qa, qb] : g.bonds) rotated = rotate_bond(rotated, n, qa, qb);
    }
    std::vector<double> probs;
    std::vector<double> values;
    double total = 0.0;
    for (const auto& [idx, a] : rotated) {
      const double pr = std::norm(a);
      if (pr == 0.0) continue;
      probs.push_back(pr);
      values.push_back(g.basis == MeasurementGroup::Basis::kBond ? bond_value(idx, n, g)
                                                                  : z_value(idx, n, g));
      total += pr;
    }
    auto rng = make_rng(seed, gi);
    std::int64_t left = shots;
    double mass = total;
    double sum = 0.0;
    double sum2 = 0.0;
    for (std::size_t o = 0; o < probs.size() && left > 0; ++o) {
      std::int64_t count = left;
      if (o + 1 < probs.size()) {
        const double q = std::clamp(probs[o] / mass, 0.0, 1.0);
        std::binomial_distribution<std::int64_t> draw(left, q);
        count = draw(rng);
      }
      left -= count;
      mass -= probs[o];
      sum += static_cast<double>(count) * values[o];
      sum2 += static_cast<double>(count) * values[o] * values[o];
    }
    const double dshots = static_cast<double>(shots);
    const double mean = sum / dshots;
    const double var = std::max(0.0, (sum2 - dshots * mean * mean) / std::max(1.0, dshots - 1.0));
    out.estimate += mean;
    variance += var / dshots;
  }
  out.std_error = std::sqrt(variance);
  return out;
}

}  // namespace lmg
