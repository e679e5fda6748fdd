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

#include "lmg/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "lmg/errors.hpp"

namespace lmg {

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::kTrigonometric:
      return "trigonometric";
    case Regime::kRational:
      return "rational";
    case Regime::kHyperbolic:
      return "hyperbolic";
  }
  return "unknown";
}

Regime ModelParams::regime() const noexcept {
  if (s > 0) return Regime::kTrigonometric;
  if (s < 0) return Regime::kHyperbolic;
  return Regime::kRational;
}

ModelParams make_params(int n, double v, double w) {
  if (n < 1) {
    throw InvalidArgument("particle number must be >= 1, got " +
                          std::to_string(n));
  }
  if (!std::isfinite(v) || !std::isfinite(w)) {
    throw InvalidArgument("interaction strengths must be finite");
  }
  ModelParams p;
  p.n = n;
  p.v = v;
  p.w = w;
  const double v2 = v * v;
  const double w2 = w * w;
  p.s = v2 > w2 ? 1 : (v2 < w2 ? -1 : 0);
  if (p.s == 0) {
    p.g = 0.0;
    p.eta = std::numeric_limits<double>::quiet_NaN();
    return p;
  }
  const double s = p.s;
  const double magnitude = std::sqrt((v2 - w2) / (s * n * n));
  // Principal root only reproduces the spectrum for V > 0 (s = +1) and W < 0
  // (s = -1); the sign below is the one that matches exact diagonalization.
  const double sign = p.s > 0 ? (v >= 0.0 ? 1.0 : -1.0) : (w >= 0.0 ? -1.0 : 1.0);
  p.g = sign * magnitude;
  p.eta = -std::sqrt((v + w) / (s * (v - w)));
  return p;
}

std::string to_string(const SectorConfig& c) {
  return "(" + std::to_string(c.m) + "," + std::to_string(c.nu_a) + "," +
         std::to_string(c.nu_b) + ")";
}

std::vector<SectorConfig> sector_configs(int n) {
  if (n < 1) return {};
  // nu_a ascending: (M,0,0),(M-1,1,1) for even N and (M,0,1),(M,1,0) for odd.
  if (n % 2 == 0) return {sector_for_parity(n, 0), sector_for_parity(n, 1)};
  return {sector_for_parity(n, 1), sector_for_parity(n, 0)};
}

SectorConfig sector_for_parity(int n, int parity) {
  if (n < 1 || (parity != 0 && parity != 1)) {
    throw InvalidArgument("no sector for N=" + std::to_string(n) +
                          " parity=" + std::to_string(parity));
  }
  SectorConfig c;
  c.nu_b = parity;
  c.nu_a = (n - parity) % 2;
  c.m = (n - c.nu_a - c.nu_b) / 2;
  return c;
}

std::size_t block_size(int n, int parity) {
  if (n < parity) return 0;
  return static_cast<std::size_t>((n - parity) / 2 + 1);
}

FockVector::FockVector(int n, int parity, std::vector<double> amps)
    : n_(n), parity_(parity), amps_(std::move(amps)) {
  if (n < 0 || (parity != 0 && parity != 1)) {
    throw InvalidArgument("bad Fock block N=" + std::to_string(n) +
                          " parity=" + std::to_string(parity));
  }
  if (amps_.size() != block_size(n, parity)) {
    throw InvalidArgument("Fock block N=" + std::to_string(n) + " parity=" +
                          std::to_string(parity) + " has " +
                          std::to_string(block_size(n, parity)) +
                          " states, got " + std::to_string(amps_.size()));
  }
}

FockVector FockVector::zeros(int n, int parity) {
  return FockVector(n, parity, std::vector<double>(block_size(n, parity), 0.0));
}

FockVector FockVector::basis(int n, int n_b) {
  if (n_b < 0 || n_b > n) {
    throw InvalidArgument("n_b out of range");
  }
  FockVector out = zeros(n, n_b % 2);
  out.amps_[static_cast<std::size_t>(n_b / 2)] = 1.0;
  return out;
}

double FockVector::norm() const { return std::sqrt(dot(*this)); }

bool FockVector::is_normalized(double tol) const {
  return std::abs(dot(*this) - 1.0) <= tol;
}

FockVector FockVector::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw InvalidArgument("cannot normalize a zero vector");
  return *this * (1.0 / nrm);
}

double FockVector::dot(const FockVector& other) const {
  if (other.n_ != n_ || other.parity_ != parity_) {
    throw InvalidArgument("Fock vectors live in different blocks");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < amps_.size(); ++k) acc += amps_[k] * other.amps_[k];
  return acc;
}

FockVector FockVector::operator+(const FockVector& other) const {
  if (other.n_ != n_ || other.parity_ != parity_) {
    throw InvalidArgument("Fock vectors live in different blocks");
  }
  std::vector<double> out(amps_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += other.amps_[k];
  return FockVector(n_, parity_, std::move(out));
}

FockVector FockVector::operator-(const FockVector& other) const {
  return *this + other * -1.0;
}

FockVector FockVector::operator*(double scale) const {
  std::vector<double> out(amps_);
  for (double& a : out) a *= scale;
  return FockVector(n_, parity_, std::move(out));
}

double diagonal_element(int n_a, int n_b, const ModelParams& p) {
  const double na = n_a;
  const double nb = n_b;
  return 0.5 * (nb - na) + p.w / p.n * (0.5 * (na + nb) + na * nb);
}

double pair_coupling(int n_a, int n_b, const ModelParams& p) {
  if (n_a < 2) return 0.0;
  const double na = n_a;
  const double nb = n_b;
  return p.v / (2.0 * p.n) * std::sqrt(na * (na - 1.0) * (nb + 1.0) * (nb + 2.0));
}

FockVector apply_hamiltonian(const FockVector& psi, const ModelParams& p) {
  if (psi.n() != p.n) {
    throw InvalidArgument("state has N=" + std::to_string(psi.n()) +
                          " but model has N=" + std::to_string(p.n));
  }
  const std::size_t dim = psi.size();
  std::vector<double> out(dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) {
    out[k] += diagonal_element(psi.n_a(k), psi.n_b(k), p) * psi[k];
    if (k + 1 < dim) {
      const double t = pair_coupling(psi.n_a(k), psi.n_b(k), p);
      out[k + 1] += t * psi[k];
      out[k] += t * psi[k + 1];
    }
  }
  return FockVector(psi.n(), psi.parity(), std::move(out));
}

double expectation(const FockVector& psi, const ModelParams& p) {
  if (!psi.is_normalized()) {
    throw InvalidArgument("expectation requires a normalized state (norm^2 = " +
                          std::to_string(psi.dot(psi)) + ")");
  }
  return psi.dot(apply_hamiltonian(psi, p));
}

namespace {

void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v[arg] < 0.0) v = -v;
}

}  // namespace

std::vector<Eigenpair> sector_spectrum(const ModelParams& p,
                                       const SectorConfig& c) {
  if (c.n() != p.n) {
    throw InvalidArgument("sector " + to_string(c) + " does not belong to N=" +
                          std::to_string(p.n));
  }
  const int parity = c.parity();
  const auto dim = static_cast<Eigen::Index>(block_size(p.n, parity));
  Eigen::VectorXd diag(dim);
  Eigen::VectorXd sub(std::max<Eigen::Index>(dim - 1, 0));
  for (Eigen::Index k = 0; k < dim; ++k) {
    const int n_b = parity + 2 * static_cast<int>(k);
    diag[k] = diagonal_element(p.n - n_b, n_b, p);
    if (k + 1 < dim) sub[k] = pair_coupling(p.n - n_b, n_b, p);
  }

  std::vector<Eigenpair> out;
  out.reserve(static_cast<std::size_t>(dim));
  if (dim == 1) {
    out.push_back({diag[0], FockVector(p.n, parity, {1.0}), c, 1});
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericFailure("tridiagonal eigensolver failed for sector " +
                         to_string(c));
  }
  for (Eigen::Index j = 0; j < dim; ++j) {
    Eigen::VectorXd v = solver.eigenvectors().col(j);
    fix_sign(v);
    std::vector<double> amps(v.data(), v.data() + dim);
    out.push_back({solver.eigenvalues()[j], FockVector(p.n, parity, std::move(amps)),
                   c, static_cast<int>(j) + 1});
  }
  return out;
}

std::vector<Eigenpair> exact_spectrum(const ModelParams& p) {
  std::vector<Eigenpair> all;
  for (const SectorConfig& c : sector_configs(p.n)) {
    auto block = sector_spectrum(p, c);
    all.insert(all.end(), std::make_move_iterator(block.begin()),
               std::make_move_iterator(block.end()));
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Eigenpair& a, const Eigenpair& b) {
                     return a.omega < b.omega;
                   });
  return all;
}

}  // namespace lmg
