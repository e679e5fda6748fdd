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

#include "lmg/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include "lmg/errors.hpp"

namespace lmg {
namespace {

void require_solvable(const ModelParams& p) {
  if (p.rational()) {
    throw UnsupportedRegime(
        "rational instance (V^2 = W^2): eta is undefined, use exact_spectrum");
  }
}

void require_sector(const SectorConfig& c, const ModelParams& p) {
  if (c.n() != p.n || c.m < 0 || c.nu_a < 0 || c.nu_a > 1 || c.nu_b < 0 ||
      c.nu_b > 1) {
    throw InvalidArgument("sector " + to_string(c) + " does not belong to N=" +
                          std::to_string(p.n));
  }
}

void check_poles(std::span<const double> e, const ModelParams& p,
                 double guard) {
  for (std::size_t l = 0; l < e.size(); ++l) {
    if (!std::isfinite(e[l])) {
      throw SingularityError("E_" + std::to_string(l + 1) + " is not finite");
    }
    if (std::abs(e[l] - p.eta) < guard || std::abs(e[l] + p.eta) < guard) {
      std::ostringstream msg;
      msg << "E_" << l + 1 << " = " << e[l] << " sits on the pole +-eta ("
          << p.eta << ")";
      throw SingularityError(msg.str());
    }
    for (std::size_t n = l + 1; n < e.size(); ++n) {
      if (std::abs(e[l] - e[n]) < guard) {
        std::ostringstream msg;
        msg << "E_" << l + 1 << " and E_" << n + 1 << " coincide (" << e[l]
            << ")";
        throw SingularityError(msg.str());
      }
    }
  }
}

// One-body part of R_l: eta/(N (E^2 - eta^2)) * A(E) with
// A(E) = g N (nu_a - nu_b)(1 + s E^2) + 2 V E (1 + nu_a + nu_b).
double one_body(double e, const SectorConfig& c, const ModelParams& p) {
  const double n = p.n;
  const double a = p.g * n * (c.nu_a - c.nu_b) * (1.0 + p.s * e * e) +
                   2.0 * p.v * e * (1.0 + c.nu_a + c.nu_b);
  return p.eta / (n * (e * e - p.eta * p.eta)) * a;
}

double one_body_derivative(double e, const SectorConfig& c,
                           const ModelParams& p) {
  const double n = p.n;
  const double d = e * e - p.eta * p.eta;
  const double a = p.g * n * (c.nu_a - c.nu_b) * (1.0 + p.s * e * e) +
                   2.0 * p.v * e * (1.0 + c.nu_a + c.nu_b);
  const double da = 2.0 * p.g * n * (c.nu_a - c.nu_b) * p.s * e +
                    2.0 * p.v * (1.0 + c.nu_a + c.nu_b);
  return p.eta / n * (da * d - a * 2.0 * e) / (d * d);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Damped Newton on R(E) = 0. Returns the converged point or nothing.
std::optional<std::vector<double>> newton(std::vector<double> e,
                                          const SectorConfig& c,
                                          const ModelParams& p,
                                          const SolverOptions& opts) {
  const auto m = static_cast<Eigen::Index>(e.size());
  std::vector<double> r;
  try {
    r = residual(e, c, p, opts.guard);
  } catch (const SingularityError&) {
    return std::nullopt;
  }
  double rnorm = max_abs(r);
  for (int it = 0; it < opts.max_newton_iterations; ++it) {
    if (!std::isfinite(rnorm)) return std::nullopt;
    if (rnorm <= opts.tol) return e;

    const std::vector<double> jac = residual_jacobian(e, c, p);
    Eigen::MatrixXd j(m, m);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index a = 0; a < m; ++a) {
      rhs[a] = -r[static_cast<std::size_t>(a)];
      for (Eigen::Index b = 0; b < m; ++b) {
        j(a, b) = jac[static_cast<std::size_t>(a * m + b)];
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(j);
    if (lu.rank() < m) return std::nullopt;
    const Eigen::VectorXd step = lu.solve(rhs);
    if (!step.allFinite()) return std::nullopt;

    double lambda = 1.0;
    bool accepted = false;
    while (lambda >= 1.0 / 1024.0) {
      std::vector<double> trial(e);
      for (Eigen::Index a = 0; a < m; ++a) {
        trial[static_cast<std::size_t>(a)] += lambda * step[a];
      }
      try {
        std::vector<double> rt = residual(trial, c, p, opts.guard);
        const double tn = max_abs(rt);
        if (std::isfinite(tn) && (tn < rnorm || lambda < 1.0 / 512.0)) {
          e = std::move(trial);
          r = std::move(rt);
          rnorm = tn;
          accepted = true;
          break;
        }
      } catch (const SingularityError&) {
        // Stepped onto a pole; shrink.
      }
      lambda *= 0.5;
    }
    if (!accepted) return std::nullopt;
  }
  if (rnorm <= opts.tol) return e;
  return std::nullopt;
}

bool same_set(const std::vector<double>& a, const std::vector<double>& b,
              double rel) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > rel * std::max(1.0, std::abs(a[i]))) {
      return false;
    }
  }
  return true;
}

// Start points when spectral seeding is off or incomplete: a weak-coupling
// pattern with k roots clustered around +|eta| and M - k around -|eta| at a
// few spreads, then uniform random points.
class StartGenerator {
 public:
  StartGenerator(const SectorConfig& c, const ModelParams& p,
                 std::uint64_t seed)
      : m_(c.m), eta_(std::abs(p.eta)), rng_(seed) {
    radius_ = 3.0 * eta_ + 2.0 * std::abs(p.v) + 2.0;
    const double base = std::sqrt(std::abs(p.g) * p.n + 1e-3);
    spreads_ = {0.25 * base, base, 2.5 * base, 0.05};
  }

  std::vector<double> next() {
    std::vector<double> e(static_cast<std::size_t>(m_));
    const int grid_total = (m_ + 1) * static_cast<int>(spreads_.size());
    if (count_ < grid_total) {
      const int k = count_ % (m_ + 1);
      const double spread = spreads_[static_cast<std::size_t>(count_ / (m_ + 1))];
      for (int l = 0; l < m_; ++l) {
        const bool upper = l < k;
        const int slot = upper ? l : l - k;
        const double centre = upper ? eta_ : -eta_;
        const double offset = spread * (slot + 0.5) * (slot % 2 == 0 ? 1.0 : -1.0);
        e[static_cast<std::size_t>(l)] = centre + offset + 1e-3 * (l + 1);
      }
    } else {
      std::uniform_real_distribution<double> dist(-radius_, radius_);
      for (double& x : e) x = dist(rng_);
    }
    ++count_;
    std::sort(e.begin(), e.end());
    return e;
  }

 private:
  int m_;
  double eta_;
  double radius_ = 1.0;
  std::vector<double> spreads_;
  std::mt19937_64 rng_;
  int count_ = 0;
};

}  // namespace

std::vector<double> residual(std::span<const double> energies,
                             const SectorConfig& c, const ModelParams& p,
                             double guard) {
  require_solvable(p);
  if (static_cast<int>(energies.size()) != c.m) {
    throw InvalidArgument("expected " + std::to_string(c.m) +
                          " spectral parameters, got " +
                          std::to_string(energies.size()));
  }
  check_poles(energies, p, guard);
  const std::size_t m = energies.size();
  std::vector<double> r(m);
  for (std::size_t l = 0; l < m; ++l) {
    const double el = energies[l];
    double pair_sum = 0.0;
    for (std::size_t n = 0; n < m; ++n) {
      if (n == l) continue;
      const double en = energies[n];
      pair_sum += (1.0 + p.s * el * en) / (el - en);
    }
    r[l] = 1.0 - one_body(el, c, p) + 2.0 * p.g * pair_sum;
  }
  return r;
}

std::vector<double> residual_jacobian(std::span<const double> energies,
                                      const SectorConfig& c,
                                      const ModelParams& p) {
  require_solvable(p);
  const std::size_t m = energies.size();
  std::vector<double> jac(m * m, 0.0);
  for (std::size_t l = 0; l < m; ++l) {
    const double el = energies[l];
    double diag = -one_body_derivative(el, c, p);
    for (std::size_t n = 0; n < m; ++n) {
      if (n == l) continue;
      const double en = energies[n];
      const double d2 = (el - en) * (el - en);
      diag -= 2.0 * p.g * (1.0 + p.s * en * en) / d2;
      jac[l * m + n] = 2.0 * p.g * (1.0 + p.s * el * el) / d2;
    }
    jac[l * m + l] = diag;
  }
  return jac;
}

double eigenvalue(std::span<const double> energies, const SectorConfig& c,
                  const ModelParams& p, double guard) {
  require_solvable(p);
  check_poles(energies, p, guard);
  const double n = p.n;
  const double nu_a = c.nu_a;
  const double nu_b = c.nu_b;
  double omega = (p.w * (nu_a + nu_b + 2.0 * nu_a * nu_b) + n * (nu_b - nu_a)) /
                 (2.0 * n);
  double sum = 0.0;
  for (double e : energies) {
    sum += (p.g * n * (1.0 + nu_a + nu_b) * (1.0 + p.s * e * e) -
            2.0 * p.v * (nu_b - nu_a) * e) /
           (e * e - p.eta * p.eta);
  }
  return omega - p.eta / n * sum;
}

std::vector<SpectralSolution> solve_m1(const SectorConfig& c,
                                       const ModelParams& p) {
  require_solvable(p);
  require_sector(c, p);
  if (c.m != 1) {
    throw InvalidArgument("solve_m1 needs M = 1, got sector " + to_string(c));
  }
  // N (E^2 - eta^2) - eta [g N d (1 + s E^2) + 2 V (1 + nu_a + nu_b) E] = 0
  const double n = p.n;
  const double d = c.nu_a - c.nu_b;
  const double a = n * (1.0 - p.eta * p.g * p.s * d);
  const double b = -2.0 * p.eta * p.v * (1.0 + c.nu_a + c.nu_b);
  const double c0 = -n * p.eta * (p.eta + p.g * d);

  std::vector<double> roots;
  if (a == 0.0) {
    throw NumericFailure("degenerate M = 1 quadratic");
  }
  const double disc = b * b - 4.0 * a * c0;
  if (disc < 0.0) {
    throw ComplexPairons("M = 1 pairons are complex for sector " + to_string(c));
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b == 0.0 ? 1.0 : b));
  roots.push_back(q / a);
  roots.push_back(q != 0.0 ? c0 / q : -q / a);

  std::vector<SpectralSolution> out;
  for (double root : roots) {
    SpectralSolution s;
    s.config = c;
    s.energies = {root};
    s.residual_norm = max_abs(residual(s.energies, c, p));
    s.omega = eigenvalue(s.energies, c, p);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.omega < y.omega; });
  for (std::size_t j = 0; j < out.size(); ++j) out[j].index = static_cast<int>(j) + 1;
  return out;
}

SpectralSolution solve_m2_simplified(const SectorConfig& c,
                                     const ModelParams& p) {
  require_sector(c, p);
  if (c.m != 2 || c.nu_a != c.nu_b) {
    throw InvalidArgument("closed form needs M = 2 and nu_a = nu_b, got " +
                          to_string(c));
  }
  if (p.w != 0.0 || p.v == 0.0) {
    throw UnsupportedRegime("closed form needs W = 0 != V; use solve_bethe");
  }
  const double nu = c.nu_a;
  const double k = 1.0 + 2.0 * nu;
  const double h = 2.0 + nu;  // N / 2
  const double root = std::sqrt(4.0 * h * h + p.v * p.v * k * k);

  SpectralSolution s;
  s.config = c;
  s.energies = {-(k * p.v + root) / (2.0 * h), -(k * p.v - root) / (2.0 * h)};
  s.residual_norm = max_abs(residual(s.energies, c, p));
  s.omega = eigenvalue(s.energies, c, p);
  const auto exact = sector_spectrum(p, c);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : exact) {
    if (std::abs(e.omega - s.omega) < best) {
      best = std::abs(e.omega - s.omega);
      s.index = e.index;
    }
  }
  return s;
}

std::vector<double> pairons_from_state(const FockVector& psi,
                                       const SectorConfig& c,
                                       const ModelParams& p, double imag_tol) {
  require_solvable(p);
  require_sector(c, p);
  if (psi.n() != p.n || psi.parity() != c.parity()) {
    throw InvalidArgument("state is not in sector " + to_string(c));
  }
  const int m = c.m;
  if (m == 0) return {};

  // p_k multiplies (a+)^{2(M-k)} (b+)^{2k} |nu_a, nu_b>, whose norm is
  // sqrt((nu_a + 2(M-k))! / nu_a! * (nu_b + 2k)! / nu_b!).
  std::vector<double> log_norm(static_cast<std::size_t>(m + 1));
  for (int k = 0; k <= m; ++k) {
    log_norm[static_cast<std::size_t>(k)] =
        0.5 * (std::lgamma(c.nu_a + 2.0 * (m - k) + 1.0) - std::lgamma(c.nu_a + 1.0) +
               std::lgamma(c.nu_b + 2.0 * k + 1.0) - std::lgamma(c.nu_b + 1.0));
  }
  const double shift =
      *std::max_element(log_norm.begin(), log_norm.end()) * 0.5;
  Eigen::VectorXd coeffs(m + 1);
  for (int k = 0; k <= m; ++k) {
    coeffs[k] = psi[static_cast<std::size_t>(k)] *
                std::exp(shift - log_norm[static_cast<std::size_t>(k)]);
  }
  const double scale = coeffs.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw InvalidArgument("zero state");
  coeffs /= scale;
  if (std::abs(coeffs[m]) < 1e-300 || std::abs(coeffs[0]) < 1e-300) {
    throw NumericFailure("EGO polynomial has a root at a pole");
  }

  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(coeffs);
  std::vector<double> out;
  for (const std::complex<double>& t : solver.roots()) {
    const std::complex<double> e = p.eta * (1.0 - t) / (1.0 + t);
    if (std::abs(e.imag()) > imag_tol * (1.0 + std::abs(e))) {
      std::ostringstream msg;
      msg << "pairon " << e.real() << (e.imag() < 0 ? "-" : "+")
          << std::abs(e.imag()) << "i is complex in sector " << to_string(c);
      throw ComplexPairons(msg.str());
    }
    out.push_back(e.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SpectralSolution> solve_bethe(const SectorConfig& c,
                                          const ModelParams& p,
                                          const SolverOptions& opts) {
  require_solvable(p);
  require_sector(c, p);
  if (p.s < 0 && !opts.allow_hyperbolic) {
    throw UnsupportedRegime(
        "hyperbolic instance (V^2 < W^2); set allow_hyperbolic to attempt a "
        "real-pairon solve");
  }

  const auto exact = sector_spectrum(p, c);
  const std::size_t want = static_cast<std::size_t>(c.m) + 1;

  if (c.m == 0) {
    SpectralSolution s;
    s.config = c;
    s.omega = eigenvalue({}, c, p);
    s.index = 1;
    if (std::abs(s.omega - exact[0].omega) > opts.match_tol) {
      throw NumericFailure("fiducial energy disagrees with diagonalization");
    }
    return {s};
  }

  std::vector<std::optional<SpectralSolution>> slots(want);
  std::size_t filled = 0;

  auto accept = [&](std::vector<double> e) {
    std::sort(e.begin(), e.end());
    for (const auto& s : slots) {
      if (s && same_set(s->energies, e, opts.dedup_tol)) return;
    }
    SpectralSolution s;
    s.config = c;
    try {
      s.residual_norm = max_abs(residual(e, c, p, opts.guard));
      s.omega = eigenvalue(e, c, p, opts.guard);
    } catch (const SingularityError&) {
      return;
    }
    if (s.residual_norm > opts.tol) return;
    s.energies = std::move(e);
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < want; ++j) {
      if (slots[j]) continue;
      const double err = std::abs(exact[j].omega - s.omega);
      if (err <= opts.match_tol &&
          (!best || err < std::abs(exact[*best].omega - s.omega))) {
        best = j;
      }
    }
    if (!best) return;
    s.index = static_cast<int>(*best) + 1;
    slots[*best] = std::move(s);
    ++filled;
  };

  auto attempt = [&](std::vector<double> start) {
    if (auto root = newton(std::move(start), c, p, opts)) accept(std::move(*root));
  };

  if (opts.spectral_seeding) {
    for (const auto& pair : exact) {
      std::vector<double> seed;
      try {
        seed = pairons_from_state(pair.state, c, p);
      } catch (const ComplexPairons&) {
        if (p.s < 0) throw;
        continue;
      } catch (const NumericFailure&) {
        continue;
      }
      attempt(std::move(seed));
    }
  }
  if (filled < want && c.m == 1) {
    try {
      for (auto& s : solve_m1(c, p)) attempt(s.energies);
    } catch (const ComplexPairons&) {
      if (p.s < 0) throw;
    }
  }

  const int budget = opts.max_starts > 0 ? opts.max_starts : 50 * (c.m + 1);
  StartGenerator starts(c, p, opts.seed);
  for (int i = 0; i < budget && filled < want; ++i) attempt(starts.next());

  if (filled < want) {
    throw IncompleteSolve("found " + std::to_string(filled) + " of " +
                              std::to_string(want) +
                              " Bethe root sets for sector " + to_string(c),
                          static_cast<int>(filled), static_cast<int>(want));
  }
  std::vector<SpectralSolution> out;
  out.reserve(want);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<SpectralSolution> solve_spectrum(const ModelParams& p,
                                             const SolverOptions& opts) {
  std::vector<SpectralSolution> all;
  for (const SectorConfig& c : sector_configs(p.n)) {
    auto part = solve_bethe(c, p, opts);
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& a, const auto& b) { return a.omega < b.omega; });
  return all;
}

}  // namespace lmg
