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

#include "lmg/bethe.hpp"
#include "lmg/model.hpp"

namespace lmg {

/// Unnormalized [(a+)^2/(E + eta) + (b+)^2/(E - eta)] psi. The result has
/// N + 2 quanta and the parity of psi.
FockVector apply_ego_factor(const FockVector& psi, double e, double eta,
                            double guard = 1e-8);

/// Normalized eigenstate for a Bethe root set: the EGO factors are applied to
/// |nu_a, nu_b> in ascending E order, renormalizing after each one. The
/// overall sign is the one the factor product produces (no flip).
FockVector build_eigenstate(const SpectralSolution& sol, const ModelParams& p);

/// Closed-form one-step extension for nu_a = nu_b = nu and W = 0 (eta = -1):
/// takes the level-M output with coefficients d_j on |2M+nu-2j, nu+2j>
/// (sector `c` of that level) and returns the normalized level-(M+1) state.
/// Throws UnsupportedRegime outside that regime.
FockVector extend_state(const FockVector& psi_m, double e_next,
                        const SectorConfig& c, const ModelParams& p);

}  // namespace lmg
