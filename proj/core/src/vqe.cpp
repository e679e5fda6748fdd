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


#include "lmg/vqe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

#include "json.hpp"
#include "lmg/bethe.hpp"
#include "lmg/ego.hpp"
#include "lmg/errors.hpp"

namespace lmg {

namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
  return splitmix64(splitmix64(splitmix64(a) ^ b) ^ c);
}

void require_sector(const SectorConfig& c, const ModelParams& p) {
  if (c.n() != p.n || c.m < 0 || c.nu_a < 0 || c.nu_a > 1 || c.nu_b < 0 ||
      c.nu_b > 1) {
    throw InvalidArgument("sector " + to_string(c) + " does not belong to N=" +
                          std::to_string(p.n));
  }
}

struct RestartOutcome {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  std::vector<TracePoint> trace;
};

json config_json(const SectorConfig& c) {
  return {{"m", c.m}, {"nu_a", c.nu_a}, {"nu_b", c.nu_b}};
}

json error_json(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  return {{"code", err ? err->code() : std::string("internal")},
          {"message", e.what()}};
}

json vqe_json(const VqeResult& r, bool include_trace) {
  json trace = json::array();
  if (include_trace) {
    for (const auto& t : r.trace) trace.push_back({t.iteration, t.energy});
  }
  json out{{"mode", to_string(r.best_thetas.mode)},
           {"estimator", to_string(r.estimator)},
           {"shots", r.estimator.shots},
           {"seed", r.seed},
           {"warm_start", r.warm_start},
           {"best_thetas", r.best_thetas.thetas},
           {"best_energy", r.best_energy},
           {"best_std_error", r.best_std_error},
           {"exact_energy", r.exact_energy},
           {"abs_error", r.abs_error},
           {"evaluations", r.evaluations},
           {"best_restart", r.best_restart},
           {"converged", r.converged}};
  if (include_trace) {
    out["trace"] = std::move(trace);
  } else {
    out["trace_length"] = r.trace.size();
  }
  return out;
}

}  // namespace

std::string to_string(const Estimator& e) {
  return e.sampled() ? "sampled" : "exact";
}

SampledEnergy evaluate(const AngleSet& thetas, const SectorConfig& c,
                       const ModelParams& p, const Estimator& estimator) {
  require_sector(c, p);
  if (thetas.m() != c.m) {
    throw InvalidArgument("sector " + to_string(c) + " needs " +
                          std::to_string(c.m) + " angles, got " +
                          std::to_string(thetas.m()));
  }
  const StateVector psi = run(build_circuit(thetas));
  if (!estimator.sampled()) return {encoded_expectation(psi, c, p), 0.0};
  const double leak = psi.leakage();
  if (leak > 1e-10) {
    throw LeakageError("state leaks " + std::to_string(leak) +
                       " outside the one-hot subspace");
  }
  return sampled_expectation(psi, pauli_groups(c, p), estimator.shots, estimator.seed);
}

double objective(const AngleSet& thetas, const SectorConfig& c,
                 const ModelParams& p, const Estimator& estimator) {
  return evaluate(thetas, c, p, estimator).estimate;
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts) {
  const std::size_t dim = x0.size();
  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };
  if (dim == 0) {
    res.value = eval(x0);
    res.x = std::move(x0);
    res.converged = true;
    return res;
  }
  const int window = opts.stall_window > 0 ? opts.stall_window
                                           : 2 * static_cast<int>(dim) + 2;

  std::vector<std::vector<double>> pts(dim + 1, x0);
  std::vector<double> vals(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += opts.initial_step;
  for (std::size_t i = 0; i <= dim; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(dim + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> p2;
    std::vector<double> v2;
    for (std::size_t i : order) {
      p2.push_back(pts[i]);
      v2.push_back(vals[i]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };
  auto affine = [&](const std::vector<double>& a, const std::vector<double>& b,
                    double t) {
    std::vector<double> out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  std::vector<double> history;
  sort_simplex();
  while (true) {
    double diameter = 0.0;
    for (std::size_t i = 1; i <= dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        diameter = std::max(diameter, std::abs(pts[i][k] - pts[0][k]));
      }
    }
    history.push_back(vals[0]);
    const auto hs = history.size();
    if (diameter < opts.simplex_tol ||
        (hs > static_cast<std::size_t>(window) &&
         history[hs - 1 - static_cast<std::size_t>(window)] - vals[0] <
             opts.improvement_tol)) {
      res.converged = true;
      break;
    }
    if (res.evaluations + 2 > opts.max_evaluations) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += pts[i][k] / static_cast<double>(dim);
    }
    const auto xr = affine(centroid, pts[dim], -1.0);
    const double fr = eval(xr);
    if (fr < vals[0]) {
      const auto xe = affine(centroid, pts[dim], -2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[dim] = xe;
        vals[dim] = fe;
      } else {
        pts[dim] = xr;
        vals[dim] = fr;
      }
    } else if (fr < vals[dim - 1]) {
      pts[dim] = xr;
      vals[dim] = fr;
    } else {
      const bool outside = fr < vals[dim];
      const auto xc = outside ? affine(centroid, xr, 0.5) : affine(centroid, pts[dim], 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : vals[dim])) {
        pts[dim] = xc;
        vals[dim] = fc;
      } else if (res.evaluations + static_cast<int>(dim) > opts.max_evaluations) {
        break;
      } else {
        for (std::size_t i = 1; i <= dim; ++i) {
          pts[i] = affine(pts[0], pts[i], 0.5);
          vals[i] = eval(pts[i]);
        }
      }
    }
    sort_simplex();
    ++res.iterations;
    res.trace.push_back({res.iterations, vals[0]});
  }
  res.x = pts[0];
  res.value = vals[0];
  return res;
}

int thread_budget() {
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LMG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return std::min<int>(hw, static_cast<int>(v));
  }
  return hw;
}

VqeResult optimize(const SectorConfig& c, const ModelParams& p, const VqeOptions& opts) {
  require_sector(c, p);
  if (opts.restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (opts.shots < 0) throw InvalidArgument("shots must be >= 0");

  const auto exact = sector_spectrum(p, c);
  VqeResult result;
  result.exact_energy = exact.front().omega;
  result.seed = opts.seed;
  result.estimator = opts.shots > 0 ? Estimator::sampling(opts.shots, opts.seed)
                                    : Estimator::exact();
  result.warm_start = opts.warm_start;
  result.best_thetas.mode = opts.mode;

  const int m = c.m;
  const int budget = opts.max_evaluations > 0 ? opts.max_evaluations
                                              : 400 * (m + 1) * (m + 1);
  std::vector<double> warm;
  if (opts.warm_start && m > 0) {
    warm = angles_for(encode(exact.front().state, c), opts.mode).thetas;
  }

  auto run_restart = [&](int r) {
    RestartOutcome out;
    std::vector<double> x0;
    if (opts.warm_start && r == 0) {
      x0 = warm;
    } else {
      std::mt19937_64 rng(mix(opts.seed, static_cast<std::uint64_t>(r), 0x5171));
      std::uniform_real_distribution<double> angle(0.0, 4.0 * std::numbers::pi);
      for (int i = 0; i < m; ++i) x0.push_back(angle(rng));
    }
    std::uint64_t calls = 0;
    auto f = [&](const std::vector<double>& x) {
      Estimator est = result.estimator;
      if (est.sampled()) est.seed = mix(opts.seed, static_cast<std::uint64_t>(r), ++calls);
      return objective(AngleSet{x, opts.mode}, c, p, est);
    };

    NelderMeadOptions nm;
    nm.simplex_tol = opts.simplex_tol;
    nm.improvement_tol = opts.improvement_tol;
    std::vector<double> x = std::move(x0);
    double value = 0.0;
    bool first = true;
    for (int round = 0; round < 8; ++round) {
      nm.max_evaluations = budget - out.evaluations;
      if (nm.max_evaluations <= 0) break;
      const NelderMeadResult res = nelder_mead(f, x, nm);
      for (const auto& t : res.trace) {
        out.trace.push_back({static_cast<int>(out.trace.size()) + 1, t.energy});
      }
      out.evaluations += res.evaluations;
      const double gain = first ? INFINITY : value - res.value;
      if (first || res.value < value) {
        x = res.x;
        value = res.value;
      }
      first = false;
      if (gain < opts.improvement_tol || !res.converged) break;
      nm.initial_step *= 0.5;
    }
    out.x = std::move(x);
    out.value = value;
    return out;
  };

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(opts.restarts));
  const int workers = std::min(opts.threads > 0 ? opts.threads : thread_budget(),
                               opts.restarts);
  if (workers <= 1) {
    for (int r = 0; r < opts.restarts; ++r) outcomes[static_cast<std::size_t>(r)] = run_restart(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int r = next++; r < opts.restarts; r = next++) {
            outcomes[static_cast<std::size_t>(r)] = run_restart(r);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  int offset = 0;
  for (int r = 0; r < opts.restarts; ++r) {
    const auto& o = outcomes[static_cast<std::size_t>(r)];
    result.evaluations += o.evaluations;
    for (const auto& t : o.trace) result.trace.push_back({offset + t.iteration, t.energy});
    offset += static_cast<int>(o.trace.size());
    if (r == 0 || o.value < outcomes[static_cast<std::size_t>(result.best_restart)].value) {
      result.best_restart = r;
    }
  }
  const auto& best = outcomes[static_cast<std::size_t>(result.best_restart)];
  result.best_thetas.thetas = best.x;
  if (result.estimator.sampled()) {
    Estimator fresh = result.estimator;
    fresh.seed = mix(opts.seed, 0xf17a1ULL, 0);
    const SampledEnergy e = evaluate(result.best_thetas, c, p, fresh);
    result.best_energy = e.estimate;
    result.best_std_error = e.std_error;
  } else {
    result.best_energy = best.value;
  }
  result.abs_error = std::abs(result.best_energy - result.exact_energy);
  const double tol = result.estimator.sampled()
                         ? std::max(opts.target_tol, 5.0 * result.best_std_error)
                         : opts.target_tol;
  result.converged = result.abs_error < tol;
  return result;
}

std::string vqe_result_to_json(const VqeResult& r, bool include_trace, int indent) {
  return vqe_json(r, include_trace).dump(indent);
}

std::string benchmark(const ModelParams& p, const BenchmarkOptions& opts) {
  json report;
  report["params"] = {{"n", p.n},         {"v", p.v},   {"w", p.w},
                      {"g", p.g},         {"eta", p.eta}, {"s", p.s},
                      {"regime", to_string(p.regime())}};
  report["sectors"] = json::array();

  for (const SectorConfig& c : sector_configs(p.n)) {
    json sector{{"config", config_json(c)}, {"rows", json::array()}};
    const auto exact = sector_spectrum(p, c);
    std::vector<SpectralSolution> bethe;
    try {
      bethe = solve_bethe(c, p);
    } catch (const std::exception& e) {
      sector["bethe_error"] = error_json(e);
    }

    for (std::size_t j = 0; j < exact.size(); ++j) {
      json row{{"index", exact[j].index}, {"omega_exact", exact[j].omega}};
      try {
        FockVector target = exact[j].state;
        row["state_source"] = "exact";
        if (!bethe.empty()) {
          row["omega_bethe"] = bethe[j].omega;
          row["pairons"] = bethe[j].energies;
          target = build_eigenstate(bethe[j], p);
          row["state_source"] = "bethe";
        }
        const auto t = encode(target, c);
        for (DepthMode mode : {DepthMode::kLinear, DepthMode::kLog}) {
          const std::string tag = to_string(mode);
          const AngleSet angles = angles_for(t, mode);
          const StateVector psi = run(build_circuit(angles));
          const double fid = fidelity(psi, encode(exact[j].state, c));
          const double energy = encoded_expectation(psi, c, p);
          const double scale = std::max(std::abs(exact[j].omega), 1e-300);
          row["angles_" + tag] = angles.thetas;
          row["fidelity_" + tag] = fid;
          row["energy_" + tag] = energy;
          row["rel_error_" + tag] = std::abs(energy - exact[j].omega) / scale;
        }
      } catch (const std::exception& e) {
        row["error"] = error_json(e);
      }

      row["vqe"] = nullptr;
      if (opts.run_vqe && j == 0) {
        json runs = json::array();
        for (std::int64_t shots : opts.shot_budgets) {
          VqeOptions vo = opts.vqe;
          vo.shots = shots;
          try {
            runs.push_back(vqe_json(optimize(c, p, vo), false));
          } catch (const std::exception& e) {
            runs.push_back({{"shots", shots}, {"error", error_json(e)}});
          }
        }
        row["vqe"] = std::move(runs);
      }
      sector["rows"].push_back(std::move(row));
    }
    report["sectors"].push_back(std::move(sector));
  }
  return report.dump(2);
}

}  // namespace lmg
