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


#include "checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "lmg/bethe.hpp"
#include "lmg/circuit.hpp"
#include "lmg/circuit_io.hpp"
#include "lmg/ego.hpp"
#include "lmg/errors.hpp"
#include "lmg/model.hpp"
#include "lmg/simulator.hpp"
#include "lmg/vqe.hpp"

namespace lmg::checks {

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  bool unexplained = false;
  std::ostringstream detail;
  std::string known;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      fail(what);
      unexplained = true;
    }
  }

  // Failure against a published value that is itself defective; `why` names
  // the defect and is only accepted if the corrected value was checked too.
  void require_known(bool ok, const std::string& what, const std::string& why) {
    if (!ok) {
      fail(what);
      if (known.find(why) == std::string::npos) known += (known.empty() ? "" : "; ") + why;
    }
  }

 private:
  void fail(const std::string& what) {
    ++failures;
    passed = false;
    if (failures <= 4) detail << (failures > 1 ? "; " : "") << what;
  }

 public:
  int failures = 0;

  std::string summary() const {
    std::string s = detail.str();
    if (failures > 4) s += "; (" + std::to_string(failures - 4) + " more)";
    return s;
  }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

CheckResult timed(std::string id, std::string name, double budget_s,
                  const std::function<void(Outcome&)>& body) {
  CheckResult r{std::move(id), std::move(name), false, "", "", 0.0};
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0) {
    o.require(r.seconds < budget_s, "runtime " + fmt(r.seconds) + " s over budget " +
                                        fmt(budget_s) + " s");
  }
  r.passed = o.passed;
  r.detail = o.passed ? "ok" : o.summary();
  if (!o.passed && !o.unexplained) r.known_issue = o.known;
  return r;
}

std::vector<double> random_unit(std::mt19937_64& rng, int len) {
  std::normal_distribution<double> gauss;
  std::vector<double> v(static_cast<std::size_t>(len));
  double s = 0.0;
  for (double& x : v) {
    x = gauss(rng);
    s += x * x;
  }
  for (double& x : v) x /= std::sqrt(s);
  return v;
}

std::vector<double> random_angles(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> u(0.0, 4.0 * kPi);
  std::vector<double> v(static_cast<std::size_t>(m));
  for (double& x : v) x = u(rng);
  return v;
}

double vec_residual(const FockVector& psi, double omega, const ModelParams& p) {
  return (apply_hamiltonian(psi, p) - psi * omega).norm();
}

// Overlap-matched comparison up to a global sign.
double distance_up_to_sign(const FockVector& a, const FockVector& b) {
  const double s = a.dot(b) < 0.0 ? -1.0 : 1.0;
  return (a - b * s).norm();
}

const SectorConfig kN7Sector{3, 1, 0};
constexpr double kN7Omega = -3.34051529181;

// Product forms of the circuit outputs, listed for |2^0>, |2^1>, ...;
// "s3" is sin(theta_3 / 2), "c3" is cos(theta_3 / 2).
const std::vector<std::vector<std::string>> kLogForms = {
    {""},
    {"s1", "c1"},
    {"c1s2", "s1", "c1c2"},
    {"s1s3", "c1s2", "s1c3", "c1c2"},
    {"c1c2s4", "s1s3", "c1s2", "s1c3", "c1c2c4"},
    {"s1c3s5", "c1c2s4", "s1s3", "c1s2", "s1c3c5", "c1c2c4"},
};
const std::vector<std::vector<std::string>> kLinearForms = {
    {""},
    {"s1", "c1"},
    {"s1s2", "s1c2", "c1"},
    {"s1s2s3", "s1s2c3", "s1c2", "c1"},
    {"s1s2s3s4", "s1s2s3c4", "s1s2c3", "s1c2", "c1"},
    {"s1s2s3s4s5", "s1s2s3s4c5", "s1s2s3c4", "s1s2c3", "s1c2", "c1"},
};

double eval_form(const std::string& form, const std::vector<double>& th) {
  double v = 1.0;
  for (std::size_t i = 0; i + 1 < form.size(); i += 2) {
    const double half = 0.5 * th[static_cast<std::size_t>(form[i + 1] - '1')];
    v *= form[i] == 's' ? std::sin(half) : std::cos(half);
  }
  return v;
}

void criterion1(Outcome& o) {
  const ModelParams p = make_params(7, 0.75, 0.5);
  const auto sols = solve_bethe(kN7Sector, p);
  const std::vector<double> expected{0.701066, 1.33363, 1.94591};
  const auto& e = sols.front().energies;
  o.require(e.size() == 3, "ground solution does not carry 3 pairons");
  for (std::size_t l = 0; l < std::min<std::size_t>(3, e.size()); ++l) {
    o.require(std::abs(e[l] - expected[l]) <= 1e-5,
              "E_" + std::to_string(l + 1) + " off by " + fmt(std::abs(e[l] - expected[l])));
  }
}

void criterion2(Outcome& o) {
  const ModelParams p = make_params(7, 0.75, 0.5);
  const auto sols = solve_bethe(kN7Sector, p);
  const double omega = sols.front().omega;
  o.require(std::abs(omega - kN7Omega) <= 1e-9,
            "Bethe eigenvalue off by " + fmt(std::abs(omega - kN7Omega)));
  const auto target = encode(build_eigenstate(sols.front(), p), kN7Sector);
  for (DepthMode mode : {DepthMode::kLinear, DepthMode::kLog}) {
    AngleSet a = angles_for(target, mode);
    for (double& t : a.thetas) t = std::trunc(t * 1e6) / 1e6;
    const double e = objective(a, kN7Sector, p);
    const double rel = std::abs(e - omega) / std::abs(omega);
    o.require(rel <= 1e-9, to_string(mode) + " circuit relative error " + fmt(rel));
  }
}

void criterion3(Outcome& o) {
  const ModelParams p = make_params(7, 0.75, 0.5);
  const auto sols = solve_bethe(kN7Sector, p);
  const auto target = encode(build_eigenstate(sols.front(), p), kN7Sector);
  const AngleSet lin = linear_angles(target);
  const std::vector<double> published_lin{3.13478, 3.20338, 9.78939};
  for (int j = 0; j < 3; ++j) {
    const double d = angle_distance(lin.thetas[static_cast<std::size_t>(j)],
                                    published_lin[static_cast<std::size_t>(j)]);
    o.require(d <= 1e-4, "linear theta_" + std::to_string(j + 1) + " off by " + fmt(d));
  }
  const AngleSet log = log_angles(target);
  const AngleSet published_log{{-2.77709, 3.10401, 3.07876}, DepthMode::kLog};
  o.require(gauge_equivalent(log, published_log, 1e-4),
            "log angles not gauge-equivalent to the published set");
}

void criterion4(Outcome& o) {
  const ModelParams p = make_params(20, 0.75, 0.5);
  const Eigenpair ground = exact_spectrum(p).front();
  o.require(ground.sector == SectorConfig{10, 0, 0}, "ground state not in sector (10,0,0)");
  const std::vector<double> published{0.982094,     -0.184149,    0.0389319,   -7.89635e-3,
                                  1.47154e-3,   -2.4413e-4,   3.49942e-5,  -4.12631e-6,
                                  3.72394e-7,   -2.22883e-8,  5.73265e-10};
  const auto t = encode(ground.state, ground.sector);
  for (std::size_t k = 0; k < published.size(); ++k) {
    const double tol = k < 4 ? 1e-5 : 1e-4;
    const double rel = std::abs(t[k] - published[k]) / std::abs(published[k]);
    const std::string what = "coefficient of |" + std::to_string(20 - 2 * k) + "," +
                              std::to_string(2 * k) + "> relative error " + fmt(rel);
    if (k == 5) {
      // Printed as -2.4413e-4; the digit string of its neighbours suggests
      // -2.44413e-4 with one digit dropped.
      const double rel_fixed = std::abs(t[k] + 2.44413e-4) / 2.44413e-4;
      o.require(rel_fixed <= tol, "coefficient of |10,10> misses -2.44413e-4 too");
      o.require_known(rel <= tol, what,
                      "published |10,10> coefficient -2.4413e-4 drops a digit; "
                      "-2.44413e-4 matches");
    } else {
      o.require(rel <= tol, what);
    }
  }
  const AngleSet lin = linear_angles(t);
  const std::vector<double> published_angles{3.14159, 3.14159, 3.14159, 3.14160, 3.14152,
                                         3.14208, 3.13865, 3.15739, 3.06371, 3.51230};
  for (std::size_t j = 0; j < published_angles.size(); ++j) {
    const double d = angle_distance(lin.thetas[j], published_angles[j]);
    o.require(d <= 1e-4, "theta_" + std::to_string(j + 1) + " off by " + fmt(d));
  }
  const int m = 10;
  for (int j = 1; j <= 4; ++j) {
    const double c = t[static_cast<std::size_t>(m + 1 - j)];  // c_{M+2-j}
    const double approx = kPi - 2.0 * c;
    const double d = angle_distance(lin.thetas[static_cast<std::size_t>(j - 1)], approx);
    o.require(d <= 1e-4, "linearized theta_" + std::to_string(j) + " off by " + fmt(d));
  }
}

void criterion5(Outcome& o) {
  std::mt19937_64 rng(20260517);
  std::uniform_real_distribution<double> uv(-2.0, 2.0);
  std::uniform_real_distribution<double> uw(-0.95, 0.95);
  int instances = 0;
  for (int n = 1; n <= 12; ++n) {
    for (int draw = 0; draw < 20; ++draw) {
      double v = uv(rng);
      if (std::abs(v) < 0.05) v = v < 0.0 ? -0.05 : 0.05;
      const double w = uw(rng) * std::abs(v);
      const ModelParams p = make_params(n, v, w);
      const std::string tag = "N=" + std::to_string(n) + " V=" + fmt(v) + " W=" + fmt(w);
      std::vector<SpectralSolution> sols;
      try {
        sols = solve_spectrum(p);
      } catch (const std::exception& e) {
        o.require(false, tag + ": " + e.what());
        continue;
      }
      ++instances;
      const auto exact = exact_spectrum(p);
      o.require(static_cast<int>(sols.size()) == n + 1, tag + ": wrong state count");
      if (sols.size() != exact.size()) continue;
      for (std::size_t i = 0; i < sols.size(); ++i) {
        const double d = std::abs(sols[i].omega - exact[i].omega);
        if (d > 1e-8) o.require(false, tag + ": eigenvalue mismatch " + fmt(d));
        const FockVector psi = build_eigenstate(sols[i], p);
        const double r = vec_residual(psi, sols[i].omega, p);
        if (r > 1e-8) o.require(false, tag + ": eigenvector residual " + fmt(r));
      }
    }
  }
  o.require(instances == 240, "only " + std::to_string(instances) + " of 240 instances solved");
}

void criterion6(Outcome& o) {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto draw_v = [&] {
    double v = u(rng);
    return std::abs(v) < 0.1 ? (v < 0.0 ? -0.1 : 0.1) : v;
  };

  for (int draw = 0; draw < 10; ++draw) {
    // N = 2: states independent of W.
    const double v = draw_v();
    const double w = u(rng);
    const ModelParams p = make_params(2, v, w);
    const double root = std::sqrt(4.0 + v * v);
    const SectorConfig c{1, 0, 0};
    const auto exact = sector_spectrum(p, c);
    for (int j = 1; j <= 2; ++j) {
      const double r = (-2.0 + (j == 1 ? -1.0 : 1.0) * root) / v;
      const double gamma = 1.0 / std::sqrt(1.0 + r * r);
      const FockVector ket =
          j == 1 ? FockVector(2, 0, {gamma, -gamma * (2.0 + root) / v})
                 : FockVector(2, 0, {-gamma, gamma * (2.0 - root) / v});
      // Same ket with the |0,2> sign flipped.
      const FockVector flipped(2, 0, {ket[0], -ket[1]});
      double best = INFINITY;
      double best_flipped = INFINITY;
      for (const auto& e : exact) {
        best = std::min(best, distance_up_to_sign(ket, e.state));
        best_flipped = std::min(best_flipped, distance_up_to_sign(flipped, e.state));
      }
      o.require(std::abs(ket.norm() - 1.0) <= 1e-10, "N=2 ket " + std::to_string(j) + " not normalized");
      o.require(best_flipped <= 1e-10 || best <= 1e-10,
                "N=2 ket " + std::to_string(j) + " off by " + fmt(best));
      o.require_known(best <= 1e-10,
                      "N=2 ket " + std::to_string(j) + " at V=" + fmt(v) + " off by " + fmt(best),
                      "published N=2 kets carry the wrong sign on |0,2> (they are "
                      "eigenvectors of the V -> -V Hamiltonian); sign-corrected kets match");
    }
  }

  for (int draw = 0; draw < 10; ++draw) {
    // N = 3 with the closed-form normalizations.
    const double v = draw_v();
    const double w = u(rng);
    const ModelParams p = make_params(3, v, w);
    const double fm = std::sqrt(9.0 + 3.0 * v * v - 6.0 * w + w * w);
    const double fp = std::sqrt(9.0 + 3.0 * v * v + 6.0 * w + w * w);
    const double s3v = std::sqrt(3.0) * v;
    auto gam = [](double x) { return 1.0 / std::sqrt(1.0 + x * x); };
    const double g0 = gam((3.0 - w + fm) / s3v);
    const double g1 = gam((-3.0 + w + fm) / s3v);
    const double g2 = gam((3.0 + w + fp) / s3v);
    const double g3 = gam((-3.0 - w + fp) / s3v);
    // Sector (1,0,1) spans |2,1>, |0,3>; sector (1,1,0) spans |3,0>, |1,2>.
    const std::vector<std::pair<SectorConfig, FockVector>> kets{
        {{1, 0, 1}, FockVector(3, 1, {g0 * (-3.0 + w - fm) / s3v, g0})},
        {{1, 0, 1}, FockVector(3, 1, {g1 * (-3.0 + w + fm) / s3v, g1})},
        {{1, 1, 0}, FockVector(3, 0, {-g2 * (3.0 + w + fp) / s3v, g2})},
        {{1, 1, 0}, FockVector(3, 0, {g3 * (-3.0 - w + fp) / s3v, g3})},
    };
    for (std::size_t i = 0; i < kets.size(); ++i) {
      const auto& [c, ket] = kets[i];
      o.require(std::abs(ket.norm() - 1.0) <= 1e-10,
                "N=3 ket " + std::to_string(i) + " not normalized");
      double best = INFINITY;
      for (const auto& e : sector_spectrum(p, c)) {
        best = std::min(best, distance_up_to_sign(ket, e.state));
      }
      o.require(best <= 1e-10, "N=3 ket " + std::to_string(i) + " off by " + fmt(best));
    }
  }

  for (int draw = 0; draw < 10; ++draw) {
    // N = 4, W = 0: the published pairs solve the N = 4 equations in the
    // gauge (g, eta) -> (-g, -eta), where the roots map to -E.
    const double v = draw_v();
    const ModelParams p = make_params(4, v, 0.0);
    const SectorConfig c{2, 0, 0};
    const double root = std::sqrt(v * v + 16.0);
    const std::vector<double> published{(v - root) / 4.0, (v + root) / 4.0};
    ModelParams mirrored = p;
    mirrored.g = -p.g;
    mirrored.eta = -p.eta;
    double r = 0.0;
    for (double x : residual(published, c, mirrored)) r = std::max(r, std::abs(x));
    o.require(r <= 1e-10, "published N=4 pairons leave residual " + fmt(r));

    const SpectralSolution s = solve_m2_simplified(c, p);
    std::vector<double> reflected{-s.energies[1], -s.energies[0]};
    for (std::size_t l = 0; l < 2; ++l) {
      const double d = std::abs(reflected[l] - published[l]);
      o.require(d <= 1e-10, "N=4 pairon " + std::to_string(l + 1) + " off by " + fmt(d));
    }
    o.require(s.residual_norm <= 1e-10, "closed-form N=4 residual " + fmt(s.residual_norm));
    const auto exact = sector_spectrum(p, c);
    o.require(std::abs(s.omega - exact[static_cast<std::size_t>(s.index - 1)].omega) <= 1e-10,
              "closed-form N=4 eigenvalue misses the spectrum");
  }
}

void criterion7(Outcome& o) {
  std::mt19937_64 rng(707);
  for (int m = 1; m <= 10; ++m) {
    for (DepthMode mode : {DepthMode::kLinear, DepthMode::kLog}) {
      double worst = 1.0;
      for (int trial = 0; trial < 100; ++trial) {
        const auto t = random_unit(rng, m + 1);
        const StateVector psi = run(build_circuit(angles_for(t, mode)));
        worst = std::min(worst, fidelity(psi, t));
      }
      const std::string tag = "M=" + std::to_string(m) + " " + to_string(mode);
      o.require(worst >= 1.0 - 1e-10, tag + ": fidelity " + fmt(1.0 - worst) + " short");
      const Circuit circ = build_circuit(AngleSet{std::vector<double>(static_cast<std::size_t>(m), 1.0), mode});
      o.require(circ.two_qubit_gate_count() == 2 * m, tag + ": wrong two-qubit gate count");
      if (mode == DepthMode::kLog) {
        const int expected = 2 * (static_cast<int>(std::floor(std::log2(m))) + 1);
        o.require(circ.two_qubit_layer_count() == expected,
                  tag + ": " + std::to_string(circ.two_qubit_layer_count()) +
                      " two-qubit layers, expected " + std::to_string(expected));
      }
    }
  }
}

void criterion8(Outcome& o) {
  std::mt19937_64 rng(808);
  for (int m = 0; m <= 5; ++m) {
    for (DepthMode mode : {DepthMode::kLinear, DepthMode::kLog}) {
      const auto& forms = (mode == DepthMode::kLinear ? kLinearForms : kLogForms)[static_cast<std::size_t>(m)];
      double worst = 0.0;
      for (int trial = 0; trial < 20; ++trial) {
        const auto th = random_angles(rng, m);
        const StateVector psi = run(build_circuit(AngleSet{th, mode}));
        for (const auto& [idx, a] : psi.nonzeros()) {
          const bool one_hot = idx != 0 && (idx & (idx - 1)) == 0;
          if (!one_hot) worst = std::max(worst, std::abs(a));
        }
        for (int k = 0; k <= m; ++k) {
          const double expected = eval_form(forms[static_cast<std::size_t>(k)], th);
          worst = std::max(worst, std::abs(psi.amplitude(std::uint64_t{1} << k) - expected));
        }
      }
      o.require(worst <= 1e-12, "M=" + std::to_string(m) + " " + to_string(mode) +
                                    ": deviation " + fmt(worst));
    }
  }
}

void criterion9(Outcome& o) {
  struct Case {
    int n;
    double v;
    double w;
  };
  for (const Case& k : {Case{7, 0.75, 0.5}, Case{8, -1.1, 0.4}, Case{5, 0.9, -0.6}}) {
    const ModelParams p = make_params(k.n, k.v, k.w);
    const SectorConfig c = exact_spectrum(p).front().sector;
    const std::string tag = "N=" + std::to_string(k.n);
    for (DepthMode mode : {DepthMode::kLinear, DepthMode::kLog}) {
      VqeOptions opts;
      opts.mode = mode;
      opts.restarts = 10;
      opts.seed = 90210;
      const VqeResult cold = optimize(c, p, opts);
      o.require(cold.abs_error < 1e-6, tag + " " + to_string(mode) + " cold error " + fmt(cold.abs_error));
      opts.warm_start = true;
      const VqeResult warm = optimize(c, p, opts);
      o.require(warm.abs_error < 1e-10, tag + " " + to_string(mode) + " warm error " + fmt(warm.abs_error));
    }
    VqeOptions opts;
    opts.restarts = 10;
    opts.seed = 4242;
    opts.shots = 1000000;
    const VqeResult sampled = optimize(c, p, opts);
    o.require(sampled.abs_error < 5.0 * sampled.best_std_error,
              tag + " sampled error " + fmt(sampled.abs_error) + " vs 5 stderr " +
                  fmt(5.0 * sampled.best_std_error));
  }
}

}  // namespace

bool acceptable(const CheckResult& r) { return r.passed || !r.known_issue.empty(); }

std::vector<CheckResult> acceptance_checks() {
  return {
      timed("1", "N=7 spectral parameters", 1.0, criterion1),
      timed("2", "N=7 ground energy and circuit expectations", 1.0, criterion2),
      timed("3", "N=7 circuit angles", 0.0, criterion3),
      timed("4", "N=20 ground state and angles", 5.0, criterion4),
      timed("5", "spectrum completeness, N <= 12", 60.0, criterion5),
      timed("6", "small-N closed forms", 0.0, criterion6),
      timed("7", "circuit universality, M <= 10", 0.0, criterion7),
      timed("8", "product-form conformance, M <= 5", 0.0, criterion8),
      timed("9", "VQE benchmark", 0.0, criterion9),
  };
}

std::vector<CheckResult> invariant_checks() {
  std::vector<CheckResult> out;
  out.push_back(timed("I1", "Hamiltonian symmetry and trace", 0.0, [](Outcome& o) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 1; n <= 16; ++n) {
      const ModelParams p = make_params(n, u(rng), u(rng));
      double trace = 0.0;
      double sum = 0.0;
      for (int parity = 0; parity < 2 && parity <= n; ++parity) {
        const std::size_t dim = block_size(n, parity);
        for (std::size_t i = 0; i < dim; ++i) {
          const FockVector ei = FockVector::basis(n, parity + 2 * static_cast<int>(i));
          const FockVector hi = apply_hamiltonian(ei, p);
          trace += hi[i];
          for (std::size_t j = 0; j < dim; ++j) {
            const FockVector ej = FockVector::basis(n, parity + 2 * static_cast<int>(j));
            const double d = std::abs(hi.dot(ej) - apply_hamiltonian(ej, p).dot(ei));
            if (d > 1e-12) o.require(false, "asymmetric block at N=" + std::to_string(n));
          }
        }
      }
      for (const auto& e : exact_spectrum(p)) sum += e.omega;
      o.require(std::abs(trace - sum) <= 1e-9 * (1.0 + std::abs(trace)),
                "trace mismatch at N=" + std::to_string(n));
    }
  }));
  out.push_back(timed("I2", "norm preservation and one-hot confinement", 0.0, [](Outcome& o) {
    std::mt19937_64 rng(12);
    for (int m = 0; m <= 12; ++m) {
      for (DepthMode mode : {DepthMode::kLinear, DepthMode::kLog}) {
        for (int trial = 0; trial < 10; ++trial) {
          const StateVector psi = run(build_circuit(AngleSet{random_angles(rng, m), mode}));
          o.require(std::abs(psi.norm_squared() - 1.0) <= 1e-12, "norm drift at M=" + std::to_string(m));
          o.require(psi.leakage() < 1e-12, "leakage at M=" + std::to_string(m));
        }
      }
    }
  }));
  out.push_back(timed("I3", "sparse and dense execution agree", 0.0, [](Outcome& o) {
    std::mt19937_64 rng(13);
    for (int m = 0; m <= 10; ++m) {
      const Circuit circ = build_circuit(AngleSet{random_angles(rng, m), DepthMode::kLog});
      const StateVector a = run(circ);
      const StateVector b = run(circ, StateVector::zero(circ.num_qubits, true));
      double worst = 0.0;
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << circ.num_qubits); ++i) {
        worst = std::max(worst, std::abs(a.amplitude(i) - b.amplitude(i)));
      }
      o.require(worst <= 1e-12, "M=" + std::to_string(m) + " deviation " + fmt(worst));
    }
  }));
  out.push_back(timed("I4", "circuit JSON round trip", 0.0, [](Outcome& o) {
    std::mt19937_64 rng(14);
    for (int m = 0; m <= 12; ++m) {
      const Circuit circ = build_circuit(AngleSet{random_angles(rng, m), DepthMode::kLog});
      o.require(circuit_from_json(circuit_to_json(circ)) == circ,
                "round trip changed the M=" + std::to_string(m) + " circuit");
    }
  }));
  out.push_back(timed("I5", "measurement groups sum to the encoded energy", 0.0, [](Outcome& o) {
    std::mt19937_64 rng(15);
    for (int m = 1; m <= 10; ++m) {
      const ModelParams p = make_params(2 * m + 1, 0.8, -0.3);
      const SectorConfig c{m, 1, 0};
      const StateVector psi = StateVector::from_one_hot(random_unit(rng, m + 1));
      double sum = 0.0;
      for (const auto& g : pauli_groups(c, p)) sum += group_expectation(psi, g);
      o.require(std::abs(sum - encoded_expectation(psi, c, p)) <= 1e-10,
                "group sum mismatch at M=" + std::to_string(m));
    }
  }));
  return out;
}

}  // namespace lmg::checks
