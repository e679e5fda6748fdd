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


#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "checks.hpp"
#include "json.hpp"
#include "lmg/bethe.hpp"
#include "lmg/circuit.hpp"
#include "lmg/circuit_io.hpp"
#include "lmg/ego.hpp"
#include "lmg/errors.hpp"
#include "lmg/model.hpp"
#include "lmg/simulator.hpp"
#include "lmg/vqe.hpp"

namespace lmg::cli {

namespace {

using nlohmann::json;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct ModelFlags {
  int n = 0;
  double v = 0.0;
  double w = 0.0;

  void add(CLI::App* app) {
    app->add_option("--n", n, "Particle number N")->required();
    app->add_option("--v", v, "Pair interaction V")->required();
    app->add_option("--w", w, "Exchange interaction W")->required();
  }
  ModelParams params() const { return make_params(n, v, w); }
};

struct Flags {
  ModelFlags model;
  std::string format = "json";
  std::string sector;
  int index = 1;
  std::string method = "bethe";
  std::string depth = "linear";
  std::string thetas;
  std::string out_path;
  std::string circuit_path;
  bool report_energy = false;
  bool allow_hyperbolic = false;
  std::uint64_t seed = 1;
  std::int64_t shots = 0;
  std::string shot_list = "0";
  int restarts = 10;
  int max_evals = 0;
  int threads = 0;
  bool warm = false;
  bool no_vqe = false;
};

SectorConfig parse_sector(std::string text, int n) {
  std::replace_if(text.begin(), text.end(),
                  [](char ch) { return ch == '(' || ch == ')' || ch == ','; }, ' ');
  std::istringstream in(text);
  SectorConfig c;
  if (!(in >> c.m >> c.nu_a >> c.nu_b) || !(in >> std::ws).eof()) {
    throw InvalidArgument("sector must look like M,nu_a,nu_b");
  }
  if (c.m < 0 || c.nu_a < 0 || c.nu_a > 1 || c.nu_b < 0 || c.nu_b > 1 || c.n() != n) {
    throw InvalidArgument("sector " + to_string(c) + " does not belong to N=" +
                          std::to_string(n));
  }
  return c;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse number '" + item + "'");
    }
  }
  return out;
}

json params_json(const ModelParams& p) {
  return {{"n", p.n},     {"v", p.v}, {"w", p.w},
          {"g", p.g},     {"eta", p.eta}, {"s", p.s},
          {"regime", to_string(p.regime())}};
}

json sector_json(const SectorConfig& c) {
  return {{"m", c.m}, {"nu_a", c.nu_a}, {"nu_b", c.nu_b}};
}

json error_json(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  return {{"code", err ? err->code() : std::string("internal")}, {"message", e.what()}};
}

SolverOptions solver_options(const Flags& f) {
  SolverOptions o;
  o.allow_hyperbolic = f.allow_hyperbolic;
  return o;
}

struct ResolvedState {
  SectorConfig sector;
  int sector_index = 0;
  int global_index = 0;
  double omega = 0.0;
  FockVector state;
};

// --index counts the whole spectrum unless --sector narrows it.
ResolvedState resolve_state(const Flags& f, const ModelParams& p) {
  ResolvedState r;
  if (!f.sector.empty()) {
    r.sector = parse_sector(f.sector, p.n);
    if (f.index < 1 || f.index > r.sector.m + 1) {
      throw InvalidArgument("index must lie in [1, " + std::to_string(r.sector.m + 1) + "]");
    }
    r.sector_index = f.index;
  } else {
    const auto spectrum = exact_spectrum(p);
    if (f.index < 1 || f.index > static_cast<int>(spectrum.size())) {
      throw InvalidArgument("index must lie in [1, " + std::to_string(spectrum.size()) + "]");
    }
    const auto& e = spectrum[static_cast<std::size_t>(f.index - 1)];
    r.sector = e.sector;
    r.sector_index = e.index;
    r.global_index = f.index;
  }
  const auto si = static_cast<std::size_t>(r.sector_index - 1);
  if (f.method == "exact") {
    const auto sector = sector_spectrum(p, r.sector);
    r.omega = sector[si].omega;
    r.state = sector[si].state;
  } else {
    const auto sols = solve_bethe(r.sector, p, solver_options(f));
    r.omega = sols[si].omega;
    r.state = build_eigenstate(sols[si], p);
  }
  return r;
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

int cmd_spectrum(const Flags& f, std::ostream& out) {
  const ModelParams p = f.model.params();
  json states = json::array();
  const auto exact = exact_spectrum(p);
  std::vector<std::pair<SectorConfig, std::vector<SpectralSolution>>> bethe;
  std::vector<std::pair<SectorConfig, json>> failures;
  for (const SectorConfig& c : sector_configs(p.n)) {
    try {
      bethe.emplace_back(c, solve_bethe(c, p, solver_options(f)));
    } catch (const std::exception& e) {
      failures.emplace_back(c, error_json(e));
    }
  }
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const auto& e = exact[i];
    json row{{"index", i + 1},
             {"sector", sector_json(e.sector)},
             {"sector_index", e.index},
             {"omega_exact", e.omega},
             {"omega_bethe", nullptr},
             {"pairons", nullptr}};
    for (const auto& [c, sols] : bethe) {
      if (c == e.sector) {
        const auto& s = sols[static_cast<std::size_t>(e.index - 1)];
        row["omega_bethe"] = s.omega;
        row["pairons"] = s.energies;
      }
    }
    for (const auto& [c, err] : failures) {
      if (c == e.sector) row["bethe_error"] = err;
    }
    states.push_back(std::move(row));
  }
  if (f.format == "csv") {
    out << "index,m,nu_a,nu_b,sector_index,omega_exact,omega_bethe,pairons\n";
    for (const auto& row : states) {
      out << row["index"].get<int>() << ',' << row["sector"]["m"].get<int>() << ','
          << row["sector"]["nu_a"].get<int>() << ',' << row["sector"]["nu_b"].get<int>()
          << ',' << row["sector_index"].get<int>() << ','
          << g17(row["omega_exact"].get<double>()) << ',';
      if (!row["omega_bethe"].is_null()) out << g17(row["omega_bethe"].get<double>());
      out << ',';
      if (!row["pairons"].is_null()) {
        bool first = true;
        for (const auto& e : row["pairons"]) {
          out << (first ? "" : ";") << g17(e.get<double>());
          first = false;
        }
      }
      out << '\n';
    }
    return 0;
  }
  emit(out, {{"params", params_json(p)}, {"states", std::move(states)}});
  return 0;
}

int cmd_bethe(const Flags& f, std::ostream& out) {
  const ModelParams p = f.model.params();
  std::vector<SectorConfig> sectors;
  if (f.sector.empty()) {
    sectors = sector_configs(p.n);
  } else {
    sectors.push_back(parse_sector(f.sector, p.n));
  }
  json blocks = json::array();
  if (f.format == "csv") out << "m,nu_a,nu_b,index,omega,residual_norm,pairons\n";
  for (const SectorConfig& c : sectors) {
    json sols = json::array();
    for (const auto& s : solve_bethe(c, p, solver_options(f))) {
      if (f.format == "csv") {
        out << c.m << ',' << c.nu_a << ',' << c.nu_b << ',' << s.index << ','
            << g17(s.omega) << ',' << g17(s.residual_norm) << ',';
        for (std::size_t l = 0; l < s.energies.size(); ++l) {
          out << (l ? ";" : "") << g17(s.energies[l]);
        }
        out << '\n';
      }
      sols.push_back({{"index", s.index},
                      {"omega", s.omega},
                      {"residual_norm", s.residual_norm},
                      {"pairons", s.energies}});
    }
    blocks.push_back({{"sector", sector_json(c)}, {"solutions", std::move(sols)}});
  }
  if (f.format != "csv") emit(out, {{"params", params_json(p)}, {"sectors", std::move(blocks)}});
  return 0;
}

int cmd_state(const Flags& f, std::ostream& out) {
  const ModelParams p = f.model.params();
  const ResolvedState r = resolve_state(f, p);
  json amps = json::array();
  if (f.format == "csv") out << "n_a,n_b,amplitude\n";
  for (std::size_t k = 0; k < r.state.size(); ++k) {
    if (f.format == "csv") {
      out << r.state.n_a(k) << ',' << r.state.n_b(k) << ',' << g17(r.state[k]) << '\n';
    }
    amps.push_back({{"n_a", r.state.n_a(k)}, {"n_b", r.state.n_b(k)}, {"amplitude", r.state[k]}});
  }
  if (f.format == "csv") return 0;
  json doc{{"params", params_json(p)},
           {"sector", sector_json(r.sector)},
           {"sector_index", r.sector_index},
           {"omega", r.omega},
           {"method", f.method},
           {"amplitudes", std::move(amps)}};
  if (r.global_index > 0) doc["index"] = r.global_index;
  emit(out, doc);
  return 0;
}

AngleSet resolve_angles(const Flags& f, std::optional<ResolvedState>* state = nullptr) {
  const DepthMode mode = parse_depth_mode(f.depth);
  if (!f.thetas.empty()) return AngleSet{parse_doubles(f.thetas), mode};
  const ModelParams p = f.model.params();
  ResolvedState r = resolve_state(f, p);
  AngleSet a = angles_for(encode(r.state, r.sector), mode);
  if (state) *state = std::move(r);
  return a;
}

int cmd_angles(const Flags& f, std::ostream& out) {
  std::optional<ResolvedState> r;
  const AngleSet a = resolve_angles(f, &r);
  const auto target = encode(r->state, r->sector);
  const double fid = fidelity(run(build_circuit(a)), target);
  if (f.format == "csv") {
    out << "j,theta\n";
    for (int j = 0; j < a.m(); ++j) out << j + 1 << ',' << g17(a.thetas[static_cast<std::size_t>(j)]) << '\n';
    return 0;
  }
  json doc{{"params", params_json(f.model.params())},
           {"sector", sector_json(r->sector)},
           {"sector_index", r->sector_index},
           {"depth", to_string(a.mode)},
           {"thetas", a.thetas},
           {"fidelity", fid}};
  if (r->global_index > 0) doc["index"] = r->global_index;
  emit(out, doc);
  return 0;
}

int cmd_circuit(const Flags& f, std::ostream& out) {
  const Circuit circ = build_circuit(resolve_angles(f));
  std::string text = export_circuit(circ, f.format);
  if (text.empty() || text.back() != '\n') text += '\n';
  if (f.out_path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream file(f.out_path, std::ios::binary);
  if (!file || !(file << text)) {
    throw NumericFailure("cannot write " + f.out_path);
  }
  emit(out, {{"written", f.out_path}, {"format", f.format}, {"num_qubits", circ.num_qubits},
             {"gates", circ.gates.size()}});
  return 0;
}

int cmd_simulate(const Flags& f, std::ostream& out) {
  std::ifstream file(f.circuit_path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot read circuit file " + f.circuit_path);
  std::stringstream buf;
  buf << file.rdbuf();
  const Circuit circ = circuit_from_json(buf.str());
  const StateVector psi = run(circ);

  json doc{{"num_qubits", circ.num_qubits},
           {"norm", std::sqrt(psi.norm_squared())},
           {"leakage", psi.leakage()}};
  json amps = json::array();
  for (const auto& [idx, a] : psi.nonzeros()) {
    amps.push_back({{"index", idx}, {"re", a.real()}, {"im", a.imag()}});
  }
  doc["amplitudes"] = amps;

  std::optional<double> energy;
  if (f.report_energy) {
    if (f.model.n <= 0) throw InvalidArgument("--report-energy needs --n, --v and --w");
    const ModelParams p = f.model.params();
    const int m = circ.num_qubits - 1;
    SectorConfig c;
    if (!f.sector.empty()) {
      c = parse_sector(f.sector, p.n);
    } else if (p.n - 2 * m == 0 || p.n - 2 * m == 2) {
      const int nu = (p.n - 2 * m) / 2;
      c = SectorConfig{m, nu, nu};
    } else {
      throw InvalidArgument("cannot infer the sector; pass --sector");
    }
    energy = encoded_expectation(psi, c, p);
    doc["sector"] = sector_json(c);
    doc["energy"] = *energy;
  }
  if (f.format == "csv") {
    out << "index,re,im\n";
    for (const auto& [idx, a] : psi.nonzeros()) {
      out << idx << ',' << g17(a.real()) << ',' << g17(a.imag()) << '\n';
    }
    if (energy) out << "# energy," << g17(*energy) << '\n';
    return 0;
  }
  emit(out, doc);
  return 0;
}

VqeOptions vqe_options(const Flags& f) {
  VqeOptions o;
  o.mode = parse_depth_mode(f.depth);
  o.restarts = f.restarts;
  o.seed = f.seed;
  o.shots = f.shots;
  o.warm_start = f.warm;
  o.max_evaluations = f.max_evals;
  o.threads = f.threads;
  return o;
}

int cmd_vqe(const Flags& f, std::ostream& out) {
  const ModelParams p = f.model.params();
  const SectorConfig c =
      f.sector.empty() ? exact_spectrum(p).front().sector : parse_sector(f.sector, p.n);
  const VqeResult r = optimize(c, p, vqe_options(f));
  if (f.format == "csv") {
    out << "iteration,energy\n";
    for (const auto& t : r.trace) out << t.iteration << ',' << g17(t.energy) << '\n';
    return 0;
  }
  json doc = json::parse(vqe_result_to_json(r));
  doc["params"] = params_json(p);
  doc["sector"] = sector_json(c);
  emit(out, doc);
  return 0;
}

int cmd_benchmark(const Flags& f, std::ostream& out) {
  const ModelParams p = f.model.params();
  BenchmarkOptions o;
  o.run_vqe = !f.no_vqe;
  o.vqe = vqe_options(f);
  o.shot_budgets.clear();
  for (double s : parse_doubles(f.shot_list)) {
    if (s < 0 || s != std::floor(s)) throw InvalidArgument("shot budgets must be non-negative integers");
    o.shot_budgets.push_back(static_cast<std::int64_t>(s));
  }
  const json report = json::parse(benchmark(p, o));
  if (f.format == "csv") {
    out << "m,nu_a,nu_b,index,omega_exact,fidelity_linear,fidelity_log,rel_error_linear,rel_error_log\n";
    for (const auto& sector : report["sectors"]) {
      for (const auto& row : sector["rows"]) {
        out << sector["config"]["m"].get<int>() << ',' << sector["config"]["nu_a"].get<int>()
            << ',' << sector["config"]["nu_b"].get<int>() << ',' << row["index"].get<int>()
            << ',' << g17(row["omega_exact"].get<double>());
        for (const char* key : {"fidelity_linear", "fidelity_log", "rel_error_linear", "rel_error_log"}) {
          out << ',';
          if (row.contains(key)) out << g17(row[key].get<double>());
        }
        out << '\n';
      }
    }
    return 0;
  }
  emit(out, report);
  return 0;
}

int cmd_verify(const Flags& f, std::ostream& out) {
  auto results = checks::acceptance_checks();
  for (auto& r : checks::invariant_checks()) results.push_back(std::move(r));
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const auto& r) { return checks::acceptable(r); });
  if (f.format == "csv") {
    out << "id,passed,name,detail,known_issue\n";
    for (const auto& r : results) {
      out << r.id << ',' << (r.passed ? "true" : "false") << ",\"" << r.name << "\",\""
          << r.detail << "\",\"" << r.known_issue << "\"\n";
    }
  } else {
    json list = json::array();
    for (const auto& r : results) {
      json item{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
      if (!r.known_issue.empty()) item["known_issue"] = r.known_issue;
      list.push_back(std::move(item));
    }
    emit(out, {{"passed", ok}, {"checks", std::move(list)}});
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Bethe-ansatz eigenstates, EGO circuits and VQE benchmarks for the LMG model",
               "lmg"};
  app.require_subcommand(1);
  Flags f;

  auto format_opt = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember(allowed));
  };
  auto state_opts = [&](CLI::App* sub) {
    f.model.add(sub);
    sub->add_option("--index", f.index, "1-based energy rank (in the sector when --sector is set)");
    sub->add_option("--sector", f.sector, "Sector M,nu_a,nu_b");
    sub->add_option("--method", f.method, "Eigenstate source")
        ->check(CLI::IsMember({"bethe", "exact"}));
    sub->add_flag("--allow-hyperbolic", f.allow_hyperbolic, "Solve V^2 < W^2 instances");
  };

  auto* spectrum = app.add_subcommand("spectrum", "Exact and Bethe spectrum");
  f.model.add(spectrum);
  spectrum->add_flag("--allow-hyperbolic", f.allow_hyperbolic, "Solve V^2 < W^2 instances");
  format_opt(spectrum, {"json", "csv"});

  auto* bethe = app.add_subcommand("bethe", "Spectral parameters of one or all sectors");
  f.model.add(bethe);
  bethe->add_option("--sector", f.sector, "Sector M,nu_a,nu_b");
  bethe->add_flag("--allow-hyperbolic", f.allow_hyperbolic, "Solve V^2 < W^2 instances");
  format_opt(bethe, {"json", "csv"});

  auto* state = app.add_subcommand("state", "Eigenstate amplitudes");
  state_opts(state);
  format_opt(state, {"json", "csv"});

  auto* angles = app.add_subcommand("angles", "Circuit angles for an eigenstate");
  state_opts(angles);
  angles->add_option("--depth", f.depth, "linear or log")->check(CLI::IsMember({"linear", "log"}));
  format_opt(angles, {"json", "csv"});

  auto* circuit = app.add_subcommand("circuit", "Export the preparation circuit");
  circuit->add_option("--n", f.model.n, "Particle number N");
  circuit->add_option("--v", f.model.v, "Pair interaction V");
  circuit->add_option("--w", f.model.w, "Exchange interaction W");
  circuit->add_option("--index", f.index, "1-based energy rank");
  circuit->add_option("--sector", f.sector, "Sector M,nu_a,nu_b");
  circuit->add_option("--method", f.method, "Eigenstate source")
      ->check(CLI::IsMember({"bethe", "exact"}));
  circuit->add_flag("--allow-hyperbolic", f.allow_hyperbolic, "Solve V^2 < W^2 instances");
  circuit->add_option("--thetas", f.thetas, "Comma-separated angles instead of an eigenstate");
  circuit->add_option("--depth", f.depth, "linear or log")->check(CLI::IsMember({"linear", "log"}));
  circuit->add_option("--out", f.out_path, "Write to this file instead of stdout");
  f.format = "json";
  circuit->add_option("--format", f.format, "json or qasm")->check(CLI::IsMember({"json", "qasm"}));

  auto* simulate = app.add_subcommand("simulate", "Run a circuit JSON file");
  simulate->add_option("--circuit", f.circuit_path, "Circuit JSON file")->required();
  simulate->add_flag("--report-energy", f.report_energy, "Report the encoded LMG energy");
  simulate->add_option("--n", f.model.n, "Particle number N");
  simulate->add_option("--v", f.model.v, "Pair interaction V");
  simulate->add_option("--w", f.model.w, "Exchange interaction W");
  simulate->add_option("--sector", f.sector, "Sector M,nu_a,nu_b");
  format_opt(simulate, {"json", "csv"});

  auto add_vqe_opts = [&](CLI::App* sub) {
    f.model.add(sub);
    sub->add_option("--seed", f.seed, "Restart and sampling seed");
    sub->add_option("--restarts", f.restarts, "Number of restarts")->check(CLI::PositiveNumber);
    sub->add_option("--depth", f.depth, "linear or log")->check(CLI::IsMember({"linear", "log"}));
    sub->add_flag("--warm", f.warm, "Start the first restart from the exact angles");
    sub->add_option("--max-evals", f.max_evals, "Evaluation budget per restart");
    sub->add_option("--threads", f.threads, "Worker threads (default: LMG_THREADS)");
  };
  auto* vqe = app.add_subcommand("vqe", "Ground-state VQE");
  add_vqe_opts(vqe);
  vqe->add_option("--shots", f.shots, "Shots per group; 0 for the exact estimator")
      ->check(CLI::NonNegativeNumber);
  vqe->add_option("--sector", f.sector, "Sector M,nu_a,nu_b (default: ground sector)");
  format_opt(vqe, {"json", "csv"});

  auto* bench = app.add_subcommand("benchmark", "Per-sector benchmark report");
  add_vqe_opts(bench);
  bench->add_option("--shots", f.shot_list, "Comma-separated shot budgets; 0 is exact");
  bench->add_flag("--no-vqe", f.no_vqe, "Skip the VQE runs");
  format_opt(bench, {"json", "csv"});

  auto* verify = app.add_subcommand("verify", "Run every acceptance fixture and invariant");
  format_opt(verify, {"json", "csv"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*spectrum) return cmd_spectrum(f, out);
    if (*bethe) return cmd_bethe(f, out);
    if (*state) return cmd_state(f, out);
    if (*angles) return cmd_angles(f, out);
    if (*circuit) return cmd_circuit(f, out);
    if (*simulate) return cmd_simulate(f, out);
    if (*vqe) return cmd_vqe(f, out);
    if (*bench) return cmd_benchmark(f, out);
    if (*verify) return cmd_verify(f, out);
  } catch (const InvalidArgument& e) {
    err << json{{"error", error_json(e)}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << json{{"error", error_json(e)}}.dump() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace lmg::cli
