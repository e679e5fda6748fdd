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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lmg {

enum class Regime { kTrigonometric, kRational, kHyperbolic };

std::string to_string(Regime regime);

/// One physical LMG instance in the bosonic (two-mode) representation
///
///   H = (n_b - n_a)/2 + V/(2N) (b+b+aa + a+a+bb) + W/N ((n_a + n_b)/2 + n_a n_b)
///
/// with the single-particle gap fixed to 1. `g`, `eta` and `s` are the
/// Gaudin parameters entering the Bethe equations. `g` carries a sign:
/// sgn(V) when s = +1 and -sgn(W) when s = -1, so that g -> V/N at W = 0.
/// For s = 0 (V^2 = W^2) the instance is rational; `g` is 0 and `eta` is NaN.
struct ModelParams {
  int n = 0;
  double v = 0.0;
  double w = 0.0;
  double g = 0.0;
  double eta = 0.0;
  int s = 0;
  double gap = 1.0;

  bool rational() const noexcept { return s == 0; }
  Regime regime() const noexcept;
};

ModelParams make_params(int n, double v, double w);

/// A fiducial sector (M, nu_a, nu_b) with N = 2M + nu_a + nu_b.
struct SectorConfig {
  int m = 0;
  int nu_a = 0;
  int nu_b = 0;

  int n() const noexcept { return 2 * m + nu_a + nu_b; }
  /// n_b mod 2 of every state in the sector.
  int parity() const noexcept { return nu_b; }

  friend bool operator==(const SectorConfig&, const SectorConfig&) = default;
};

std::string to_string(const SectorConfig& c);

/// All sectors of an N-particle system, ordered by nu_a ascending.
std::vector<SectorConfig> sector_configs(int n);

/// The unique sector of an N-particle system whose states have the given
/// n_b parity.
SectorConfig sector_for_parity(int n, int parity);

/// Real amplitudes over one parity block of the N-boson Fock space. Entry k is
/// the coefficient of |n_a, n_b> = |N - parity - 2k, parity + 2k>.
class FockVector {
 public:
  FockVector() = default;
  FockVector(int n, int parity, std::vector<double> amps);

  static FockVector zeros(int n, int parity);
  /// The single Fock state |n - n_b, n_b>.
  static FockVector basis(int n, int n_b);

  int n() const noexcept { return n_; }
  int parity() const noexcept { return parity_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<const double> amps() const noexcept { return amps_; }
  double operator[](std::size_t k) const { return amps_[k]; }

  int n_b(std::size_t k) const noexcept {
    return parity_ + 2 * static_cast<int>(k);
  }
  int n_a(std::size_t k) const noexcept { return n_ - n_b(k); }

  double norm() const;
  bool is_normalized(double tol = 1e-10) const;
  FockVector normalized() const;
  double dot(const FockVector& other) const;

  FockVector operator+(const FockVector& other) const;
  FockVector operator-(const FockVector& other) const;
  FockVector operator*(double scale) const;

 private:
  int n_ = 0;
  int parity_ = 0;
  std::vector<double> amps_;
};

/// Number of ladder states in the parity block: (N - parity)/2 + 1.
std::size_t block_size(int n, int parity);

/// <n_a, n_b|H|n_a, n_b>.
double diagonal_element(int n_a, int n_b, const ModelParams& p);

/// <n_a - 2, n_b + 2|H|n_a, n_b> = V/(2N) sqrt(n_a (n_a - 1)(n_b + 1)(n_b + 2)).
double pair_coupling(int n_a, int n_b, const ModelParams& p);

FockVector apply_hamiltonian(const FockVector& psi, const ModelParams& p);

/// <psi|H|psi> in units of the gap. Throws InvalidArgument when psi is not
/// normalized.
double expectation(const FockVector& psi, const ModelParams& p);

struct Eigenpair {
  double omega = 0.0;
  FockVector state;
  SectorConfig sector;
  /// 1-based energy rank inside the sector.
  int index = 0;
};

/// Exact eigenpairs of one sector, ascending in energy. Eigenvectors are
/// normalized with their largest-magnitude amplitude positive.
std::vector<Eigenpair> sector_spectrum(const ModelParams& p,
                                       const SectorConfig& c);

/// All N + 1 eigenpairs from both parity blocks, ascending in energy.
std::vector<Eigenpair> exact_spectrum(const ModelParams& p);

}  // namespace lmg
