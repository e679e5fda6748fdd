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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lmg/circuit.hpp"
#include "lmg/model.hpp"
#include "lmg/simulator.hpp"

namespace lmg {

/// Exact expectation (shots == 0) or a shot-based estimate.
struct Estimator {
  std::int64_t shots = 0;
  std::uint64_t seed = 0;

  bool sampled() const noexcept { return shots > 0; }
  static Estimator exact() { return {}; }
  static Estimator sampling(std::int64_t shots, std::uint64_t seed) { return {shots, seed}; }
};

std::string to_string(const Estimator& e);

/// build_circuit -> run -> encoded_expectation, or sampled_expectation over
/// pauli_groups when the estimator samples.
SampledEnergy evaluate(const AngleSet& thetas, const SectorConfig& c,
                       const ModelParams& p, const Estimator& estimator);

double objective(const AngleSet& thetas, const SectorConfig& c,
                 const ModelParams& p, const Estimator& estimator = Estimator::exact());

struct TracePoint {
  int iteration = 0;
  double energy = 0.0;
};

struct NelderMeadOptions {
  /// Hard cap, except that the dim + 1 start vertices are always evaluated.
  int max_evaluations = 2000;
  double simplex_tol = 1e-8;
  double improvement_tol = 1e-12;
  /// Iterations over which the best value must improve by improvement_tol;
  /// 0 means 2 dim + 2.
  int stall_window = 0;
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  int iterations = 0;
  /// Best vertex after every iteration.
  std::vector<TracePoint> trace;
  bool converged = false;
};

/// Nelder-Mead simplex (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) on an axis-aligned start simplex.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts);

struct VqeOptions {
  DepthMode mode = DepthMode::kLinear;
  int restarts = 10;
  std::uint64_t seed = 1;
  /// 0 selects the exact estimator.
  std::int64_t shots = 0;
  /// First restart starts from the angles of the exact target state.
  bool warm_start = false;
  /// Per restart; 0 means 400 (M + 1)^2.
  int max_evaluations = 0;
  double target_tol = 1e-6;
  double simplex_tol = 1e-8;
  double improvement_tol = 1e-12;
  /// 0 means thread_budget().
  int threads = 0;
};

struct VqeResult {
  AngleSet best_thetas;
  double best_energy = 0.0;
  /// Standard error of best_energy; 0 for the exact estimator.
  double best_std_error = 0.0;
  double exact_energy = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  /// (global iteration, best energy of that restart's simplex).
  std::vector<TracePoint> trace;
  std::uint64_t seed = 0;
  Estimator estimator;
  bool warm_start = false;
  int best_restart = 0;
  /// abs_error within target_tol (or 5 standard errors when sampling).
  bool converged = false;
};

/// Hardware concurrency capped by LMG_THREADS (at least 1).
int thread_budget();

/// Ground-state VQE inside sector c, scored against exact diagonalization.
VqeResult optimize(const SectorConfig& c, const ModelParams& p,
                   const VqeOptions& opts = {});

std::string vqe_result_to_json(const VqeResult& r, bool include_trace = true,
                               int indent = 2);

struct BenchmarkOptions {
  /// Shot budgets for the ground-state VQE of every sector; 0 is exact.
  std::vector<std::int64_t> shot_budgets{0};
  bool run_vqe = true;
  VqeOptions vqe;
};

/// Per-sector report: exact and Bethe eigenvalues, circuit fidelities and
/// encoded energies in both depth modes, ground-state VQE runs. Returned as
/// JSON text; rows that fail carry an "error" object instead of numbers.
std::string benchmark(const ModelParams& p, const BenchmarkOptions& opts = {});

}  // namespace lmg
