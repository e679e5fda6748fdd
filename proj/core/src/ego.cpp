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

#include "lmg/ego.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lmg/errors.hpp"

namespace lmg {

FockVector apply_ego_factor(const FockVector& psi, double e, double eta,
                            double guard) {
  if (!std::isfinite(e) || std::abs(e + eta) < guard ||
      std::abs(e - eta) < guard) {
    std::ostringstream msg;
    msg << "EGO factor with E = " << e << " hits the pole +-eta (" << eta << ")";
    throw SingularityError(msg.str());
  }
  const int parity = psi.parity();
  std::vector<double> out(psi.size() + 1, 0.0);
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double na = psi.n_a(k);
    const double nb = psi.n_b(k);
    // (a+)^2 keeps n_b, so the ladder index stays k; (b+)^2 moves to k + 1.
    out[k] += std::sqrt((na + 1.0) * (na + 2.0)) / (e + eta) * psi[k];
    out[k + 1] += std::sqrt((nb + 1.0) * (nb + 2.0)) / (e - eta) * psi[k];
  }
  return FockVector(psi.n() + 2, parity, std::move(out));
}

FockVector build_eigenstate(const SpectralSolution& sol, const ModelParams& p) {
  const SectorConfig& c = sol.config;
  if (static_cast<int>(sol.energies.size()) != c.m) {
    throw InvalidArgument("solution carries " +
                          std::to_string(sol.energies.size()) +
                          " pairons for sector " + to_string(c));
  }
  if (c.m > 0 && p.rational()) {
    throw UnsupportedRegime("EGO undefined for rational parameters");
  }
  std::vector<double> order(sol.energies);
  std::sort(order.begin(), order.end());

  FockVector psi = FockVector::basis(c.nu_a + c.nu_b, c.nu_b);
  // Renormalize per factor; the dropped log-norm only scales the result.
  for (double e : order) {
    psi = apply_ego_factor(psi, e, p.eta).normalized();
  }
  return psi;
}

FockVector extend_state(const FockVector& psi_m, double e_next,
                        const SectorConfig& c, const ModelParams& p) {
  if (c.nu_a != c.nu_b) {
    throw UnsupportedRegime("extend_state needs nu_a = nu_b");
  }
  if (p.w != 0.0 || p.v == 0.0) {
    throw UnsupportedRegime("extend_state needs W = 0 != V");
  }
  if (psi_m.n() != c.n() || psi_m.parity() != c.parity()) {
    throw InvalidArgument("state is not a level-" + std::to_string(c.m) +
                          " output of sector " + to_string(c));
  }
  if (std::abs(e_next - 1.0) < 1e-8 || std::abs(e_next + 1.0) < 1e-8) {
    throw SingularityError("E_{M+1} sits on the pole +-1");
  }
  const int m = c.m;
  const int nu = c.nu_a;
  auto w = [&](int j, int i) { return static_cast<double>(2 * m + nu - 2 * j + i); };
  auto x = [&](int j, int i) { return static_cast<double>(nu + 2 * j + i); };
  const double em = e_next - 1.0;
  const double ep = e_next + 1.0;

  double gamma = 0.0;
  for (int j = 0; j <= m; ++j) {
    const double d = psi_m[static_cast<std::size_t>(j)];
    gamma += d * d * (w(j, 1) * w(j, 2) / (em * em) + x(j, 1) * x(j, 2) / (ep * ep));
  }
  for (int j = 0; j < m; ++j) {
    const double cross = std::sqrt(w(j, -1) * x(j, 1)) * std::sqrt(w(j, 0) * x(j, 2));
    gamma += 2.0 * psi_m[static_cast<std::size_t>(j)] *
             psi_m[static_cast<std::size_t>(j + 1)] * cross / (e_next * e_next - 1.0);
  }
  if (!(gamma > 0.0)) {
    throw NumericFailure("non-positive normalization in extend_state");
  }

  std::vector<double> out(static_cast<std::size_t>(m + 2), 0.0);
  const double inv = 1.0 / std::sqrt(gamma);
  for (int j = 0; j <= m; ++j) {
    const double d = psi_m[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(j)] += inv * d * std::sqrt(w(j, 1) * w(j, 2)) / em;
    out[static_cast<std::size_t>(j + 1)] += inv * d * std::sqrt(x(j, 1) * x(j, 2)) / ep;
  }
  return FockVector(psi_m.n() + 2, psi_m.parity(), std::move(out));
}

}  // namespace lmg
