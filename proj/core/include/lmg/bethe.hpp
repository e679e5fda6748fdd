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

#include <cstdint>
#include <span>
#include <vector>

#include "lmg/model.hpp"

namespace lmg {

/// One root set {E_1..E_M} of the Bethe equations together with its
/// eigenvalue. `energies` is kept sorted ascending.
struct SpectralSolution {
  SectorConfig config;
  std::vector<double> energies;
  double omega = 0.0;
  double residual_norm = 0.0;
  /// 1-based rank of omega inside the sector.
  int index = 0;
};

struct SolverOptions {
  /// Newton stops once max_l |R_l| <= tol.
  double tol = 1e-10;
  /// Absolute tolerance when matching omega against exact diagonalization.
  double match_tol = 1e-8;
  /// Start budget; 0 means 50 (M + 1).
  int max_starts = 0;
  int max_newton_iterations = 200;
  /// Distance to a pole (E = +-eta or E_l = E_n) below which an iterate is
  /// rejected.
  double guard = 1e-8;
  /// Relative tolerance under which two sorted root sets are the same.
  double dedup_tol = 1e-6;
  /// Seed for the random start generator.
  std::uint64_t seed = 0x5eed1e55ULL;
  /// Accept s = -1 instances (real pairons are then required, not assumed).
  bool allow_hyperbolic = false;
  /// Seed Newton from the roots of the exact eigenvectors' EGO polynomial
  /// before falling back to grid and random starts.
  bool spectral_seeding = true;
};

/// R_l(E) for every l. Throws SingularityError when an E_l is within
/// `guard` of +-eta or of another E_n, UnsupportedRegime for rational params,
/// InvalidArgument when E.size() != c.m.
std::vector<double> residual(std::span<const double> energies,
                             const SectorConfig& c, const ModelParams& p,
                             double guard = 1e-8);

/// Analytic dR_l/dE_n, row-major M x M.
std::vector<double> residual_jacobian(std::span<const double> energies,
                                      const SectorConfig& c,
                                      const ModelParams& p);

/// omega(E) in units of the gap. Empty E gives the fiducial energy.
double eigenvalue(std::span<const double> energies, const SectorConfig& c,
                  const ModelParams& p, double guard = 1e-8);

/// Both roots of the M = 1 equation after clearing denominators, ordered by
/// omega. Throws ComplexPairons if the discriminant is negative.
std::vector<SpectralSolution> solve_m1(const SectorConfig& c,
                                       const ModelParams& p);

/// Closed-form middle root set of the M = 2, W = 0, nu_a = nu_b sector,
/// where E_1 E_2 = -1 and the coupling sum vanishes.
SpectralSolution solve_m2_simplified(const SectorConfig& c,
                                     const ModelParams& p);

/// All M + 1 root sets of a sector, sorted by omega, each validated against
/// the exact eigenvalues of the same sector.
std::vector<SpectralSolution> solve_bethe(const SectorConfig& c,
                                          const ModelParams& p,
                                          const SolverOptions& opts = {});

/// solve_bethe over every sector of p.n; N + 1 solutions sorted by omega.
std::vector<SpectralSolution> solve_spectrum(const ModelParams& p,
                                             const SolverOptions& opts = {});

/// Reads pairons off an eigenvector: the EGO is a homogeneous polynomial of
/// degree M in (a+)^2 and (b+)^2, so the roots t_l of sum_k p_k t^k, with p_k
/// the amplitudes stripped of their factorial norms, give
/// E_l = eta (1 - t_l)/(1 + t_l). Returns the real parts sorted ascending;
/// throws ComplexPairons when a root is off the real axis by more than
/// `imag_tol` (relative).
std::vector<double> pairons_from_state(const FockVector& psi,
                                       const SectorConfig& c,
                                       const ModelParams& p,
                                       double imag_tol = 1e-6);

}  // namespace lmg
