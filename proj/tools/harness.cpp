// Copyright 2026 The medol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "harness.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "medol/evaluation.hpp"
#include "medol/rng.hpp"
#include "medol/schedules.hpp"
#include "medol/smoothing.hpp"

namespace fs = std::filesystem;

namespace medol::harness {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

OracleKind oracle_from(const std::string& name) {
  if (name == "first") return OracleKind::kFirst;
  if (name == "zero") return OracleKind::kZero;
  throw ConfigError("solver.oracle must be 'first' or 'zero', got '" + name + "'");
}

ScheduleMode schedule_mode_from(const std::string& regime, OracleKind oracle) {
  if (regime == "smooth") {
    if (oracle == OracleKind::kZero)
      throw ConfigError("schedule.regime smooth requires the first-order oracle");
    return ScheduleMode::kSmooth;
  }
  if (regime == "nonsmooth")
    return oracle == OracleKind::kZero ? ScheduleMode::kNonsmoothZero
                                       : ScheduleMode::kNonsmoothFirst;
  throw ConfigError("schedule.regime must be 'smooth' or 'nonsmooth', got '" + regime + "'");
}

Dataset load_dataset(const KvConfig& cfg) {
  const std::string kind = cfg.get_string("dataset.kind");
  Dataset ds;
  if (kind == "synthetic") {
    SyntheticSpec spec;
    spec.samples = cfg.get_u64("dataset.samples", 2000);
    spec.dim = cfg.get_int("dataset.dim", 20);
    spec.separation = cfg.get_double("dataset.separation", 0.9);
    spec.noise = cfg.get_double("dataset.noise", 0.3);
    spec.seed = cfg.get_u64("dataset.seed", 0);
    ds = make_synthetic(spec);
  } else if (kind == "libsvm") {
    ds = load_libsvm(cfg.resolve_path(cfg.get_string("dataset.path")));
  } else {
    throw ConfigError("dataset.kind must be 'synthetic' or 'libsvm', got '" + kind + "'");
  }
  if (cfg.get_bool("dataset.normalize", true)) ds = normalize(ds);
  return ds;
}

/// Samples stochastic gradients at the zero vector to suggest G (rms
/// norm) and sigma (rms deviation from each agent's full gradient).
std::pair<double, double> estimate_gradient_moments(const ObjectiveSuite& suite,
                                                    std::uint64_t seed) {
  constexpr int kCalls = 100;
  Rng rng(seed ^ 0xABCDEF12345ULL);
  const Vec x0(static_cast<std::size_t>(suite.dim()), 0.0);
  double sum_sq = 0.0;
  double sum_dev = 0.0;
  for (int call = 0; call < kCalls; ++call) {
    const int agent = static_cast<int>(rng.index(static_cast<std::uint64_t>(suite.agents())));
    const LocalObjective& local = suite.local(agent);
    const Vec g = local.subgradient(x0, rng.index(local.sample_count()));
    sum_sq += norm2_sq(g);
    sum_dev += std::pow(dist2(g, local.full_subgradient(x0)), 2);
  }
  return {std::sqrt(sum_sq / kCalls), std::sqrt(sum_dev / kCalls)};
}

const char* mode_name(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::kSmooth: return "smooth";
    case ScheduleMode::kNonsmoothFirst: return "nonsmooth_first";
    case ScheduleMode::kNonsmoothZero: return "nonsmooth_zero";
  }
  return "?";
}

}  // namespace

Experiment resolve_experiment(const KvConfig& cfg) {
  Experiment exp;
  KvConfig& resolved = exp.resolved;

  // Dataset.
  const Dataset full = load_dataset(cfg);
  const double test_fraction = cfg.get_double("dataset.test_fraction", 0.0);
  const std::uint64_t split_seed = cfg.get_u64("dataset.split_seed", 0);
  if (test_fraction > 0.0) {
    auto [train, test] = train_test_split(full, test_fraction, split_seed);
    exp.train = std::move(train);
    exp.test = std::move(test);
  } else {
    exp.train = full;
  }
  for (const auto& [key, value] : cfg.values())
    if (key.starts_with("dataset.")) resolved.set(key, value);
  if (cfg.get_string("dataset.kind") == "libsvm")
    resolved.set("dataset.path",
                 fs::absolute(cfg.resolve_path(cfg.get_string("dataset.path"))).string());

  // Topology.
  const std::string topo_kind = cfg.get_string("topology.kind");
  std::vector<std::string> tokens{topo_kind};
  for (const char* param : {"n", "m", "p", "seed", "path"}) {
    const std::string key = std::string("topology.") + param;
    if (cfg.has(key)) tokens.push_back(std::string(param) + "=" + cfg.get_string(key));
  }
  exp.matrix = topology_from_tokens(tokens, cfg.base_dir());
  const int n = exp.matrix.n;
  // The resolved config always points at the exported matrix file so the
  // run reproduces even for randomized constructions.
  resolved.set("topology.kind", "file");
  resolved.set("topology.path", "matrix.txt");

  // Objective suite over the training shards.
  const double lambda_scale = cfg.get_double("objective.lambda_scale", 1e-5);
  const double alpha = cfg.get_double("objective.alpha", 2.0);
  const std::uint64_t partition_seed = cfg.get_u64("dataset.partition_seed", 0);
  exp.part = make_partition(exp.train, n, partition_seed);
  exp.suite.emplace(make_svm_suite(exp.train, exp.part, lambda_scale / n, alpha));
  resolved.set("objective.lambda_scale", fmt17(lambda_scale));
  resolved.set("objective.alpha", fmt17(alpha));
  resolved.set("dataset.partition_seed", std::to_string(partition_seed));

  // Solver.
  exp.solver = cfg.get_string("solver.kind");
  const std::uint64_t seed = cfg.get_u64("solver.seed", 0);
  const std::uint64_t trace_every = cfg.get_u64("solver.trace_every", 1);
  resolved.set("solver.kind", exp.solver);
  resolved.set("solver.seed", std::to_string(seed));
  resolved.set("solver.trace_every", std::to_string(trace_every));

  if (exp.solver == "medol") {
    const OracleKind oracle = oracle_from(cfg.get_string("solver.oracle", "first"));
    RunConfig& rc = exp.run_cfg;
    rc.oracle = oracle;
    rc.seed = seed;
    rc.trace_every = trace_every;
    rc.n = n;
    rc.d = exp.train.dim;
    rc.batch_size = cfg.get_int("solver.batch_size", 1);
    rc.track_diameter = cfg.get_bool("solver.track_diameter", true);

    const std::string mode = cfg.get_string("schedule.mode");
    if (mode == "manual") {
      rc.K = cfg.get_int("schedule.K");
      rc.T = cfg.get_u64("schedule.T");
      rc.D = cfg.get_double("schedule.D");
      rc.eta = cfg.get_double("schedule.eta");
      rc.delta_prime = cfg.get_double("schedule.delta_prime", 0.0);
    } else if (mode == "theory" || mode == "experiment") {
      const double delta = cfg.get_double("schedule.delta");
      const std::uint64_t rounds = cfg.get_u64("schedule.N");
      ProblemConstants pc;
      pc.n = n;
      pc.d = exp.train.dim;
      pc.rho = exp.matrix.rho;
      pc.gamma = cfg.get_double("schedule.gamma", 1.0);
      pc.L1 = cfg.get_double("schedule.L1", 1.0);
      const double suite_lipschitz = exp.suite->lipschitz_bound();
      pc.L = cfg.get_double("schedule.L",
                            std::isfinite(suite_lipschitz) ? suite_lipschitz : 1.0);
      if (cfg.has("schedule.G") && cfg.has("schedule.sigma")) {
        pc.G = cfg.get_double("schedule.G");
        pc.sigma = cfg.get_double("schedule.sigma");
      } else {
        const auto [g_hat, sigma_hat] = estimate_gradient_moments(*exp.suite, seed);
        pc.G = cfg.get_double("schedule.G", g_hat);
        pc.sigma = cfg.get_double("schedule.sigma", sigma_hat);
      }
      const ScheduleMode smode =
          schedule_mode_from(cfg.get_string("schedule.regime", "nonsmooth"), oracle);
      const EtaMode eta_mode = mode == "theory" ? EtaMode::kTheory : EtaMode::kExperiment;
      const Schedule schedule =
          make_schedule(delta, rounds, pc, smode, eta_mode, cfg.maybe_double("schedule.c_T"));
      rc.K = static_cast<int>(schedule.K);
      rc.T = schedule.T;
      rc.D = schedule.D;
      rc.eta = schedule.eta;
      rc.delta_prime = schedule.delta_prime;
      exp.diameter_guard_warning = !schedule.diameter_guard_ok;

      resolved.set("schedule.provenance", mode);
      resolved.set("schedule.provenance_delta", fmt17(delta));
      resolved.set("schedule.provenance_N", std::to_string(rounds));
      resolved.set("schedule.provenance_regime", mode_name(smode));
      resolved.set("schedule.provenance_G", fmt17(pc.G));
      resolved.set("schedule.provenance_sigma", fmt17(pc.sigma));
      resolved.set("schedule.provenance_L", fmt17(pc.L));
      resolved.set("schedule.provenance_gamma", fmt17(pc.gamma));
    } else {
      throw ConfigError("schedule.mode must be manual, theory, or experiment");
    }
    if (rc.oracle == OracleKind::kZero && !(rc.delta_prime > 0))
      throw ConfigError("zero-order oracle requires schedule.delta_prime > 0");
    resolved.set("solver.oracle", rc.oracle == OracleKind::kZero ? "zero" : "first");
    resolved.set("solver.batch_size", std::to_string(rc.batch_size));
    resolved.set("solver.track_diameter", rc.track_diameter ? "true" : "false");
    resolved.set("schedule.mode", "manual");
    resolved.set("schedule.K", std::to_string(rc.K));
    resolved.set("schedule.T", std::to_string(rc.T));
    resolved.set("schedule.D", fmt17(rc.D));
    resolved.set("schedule.eta", fmt17(rc.eta));
    resolved.set("schedule.delta_prime", fmt17(rc.delta_prime));
  } else if (exp.solver == "dpsgd" || exp.solver == "dgfm") {
    BaselineConfig& bc = exp.baseline_cfg;
    bc.rounds = cfg.get_u64("baseline.rounds");
    bc.step_size = cfg.get_double("baseline.step_size");
    bc.delta_prime = cfg.get_double("baseline.delta_prime", 0.0);
    bc.seed = seed;
    bc.trace_every = trace_every;
    if (exp.solver == "dgfm" && !(bc.delta_prime > 0))
      throw ConfigError("dgfm requires baseline.delta_prime > 0");
    resolved.set("baseline.rounds", std::to_string(bc.rounds));
    resolved.set("baseline.step_size", fmt17(bc.step_size));
    resolved.set("baseline.delta_prime", fmt17(bc.delta_prime));
  } else {
    throw ConfigError("solver.kind must be medol, dpsgd, or dgfm, got '" + exp.solver + "'");
  }

  // Run options.
  exp.out_dir = cfg.get_string("run.out_dir", "");
  exp.eval_delta = cfg.get_double("run.eval_delta", 0.0);
  exp.proxy_samples = cfg.get_u64("run.proxy_samples", 1000);
  if (exp.eval_delta > 0.0) {
    resolved.set("run.eval_delta", fmt17(exp.eval_delta));
    resolved.set("run.proxy_samples", std::to_string(exp.proxy_samples));
  }
  if (!exp.out_dir.empty()) resolved.set("run.out_dir", exp.out_dir);
  return exp;
}

RunResult execute(const Experiment& exp) {
  MetricHooks hooks;
  if (!exp.test.samples.empty()) {
    const Dataset& test = exp.test;
    hooks.test_accuracy = [&test](const Vec& x) { return test_accuracy(x, test); };
  }
  if (exp.eval_delta > 0.0) {
    const ObjectiveSuite& suite = *exp.suite;
    const double delta = exp.eval_delta;
    const std::uint64_t samples = exp.proxy_samples;
    const std::uint64_t seed = exp.solver == "medol" ? exp.run_cfg.seed : exp.baseline_cfg.seed;
    // One fresh derived stream per call keeps the metric independent of
    // how many epochs preceded it.
    auto counter = std::make_shared<std::uint64_t>(0);
    hooks.proxy_norm = [&suite, delta, samples, seed, counter](const Vec& x) {
      Rng rng = Rng::stream(seed ^ 0x5EEDFACEULL, (*counter)++);
      const McEstimate est = goldstein_proxy(suite, x, delta, samples, rng, OracleKind::kFirst);
      return std::pair<double, double>(est.estimate, est.std_error);
    };
  }

  if (exp.solver == "medol") return run_medol(exp.run_cfg, *exp.suite, exp.matrix, hooks);
  if (exp.solver == "dpsgd") return run_dpsgd(exp.baseline_cfg, *exp.suite, exp.matrix, hooks);
  return run_dgfm(exp.baseline_cfg, *exp.suite, exp.matrix, hooks);
}

std::string trace_csv(const RunResult& result, const std::string& solver) {
  std::string out = "epoch,round,solver,grad_norm,proxy_norm,test_acc,disagreement_max,oracle_calls\n";
  const auto cell = [](const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); };
  for (const TraceRecord& rec : result.trace) {
    out += std::to_string(rec.epoch);
    out += ',';
    out += std::to_string(rec.round);
    out += ',';
    out += solver;
    out += ',';
    out += cell(rec.grad_norm);
    out += ',';
    out += cell(rec.proxy_norm);
    out += ',';
    out += cell(rec.test_acc);
    out += ',';
    out += fmt17(rec.disagreement_max);
    out += ',';
    out += std::to_string(rec.oracle_calls);
    out += '\n';
  }
  return out;
}

std::string summary_json(const Experiment& exp, const RunResult& result) {
  nlohmann::ordered_json j;
  j["solver"] = exp.solver;
  j["n"] = exp.matrix.n;
  j["d"] = exp.train.dim;
  j["rho"] = exp.matrix.rho;
  j["train_samples"] = exp.train.size();
  j["test_samples"] = exp.test.size();
  j["discarded_samples"] = exp.part.discarded;

  if (exp.solver == "medol") {
    j["schedule"] = {{"K", exp.run_cfg.K},
                     {"T", exp.run_cfg.T},
                     {"D", exp.run_cfg.D},
                     {"eta", exp.run_cfg.eta},
                     {"delta_prime", exp.run_cfg.delta_prime},
                     {"oracle", exp.run_cfg.oracle == OracleKind::kZero ? "zero" : "first"},
                     {"seed", exp.run_cfg.seed}};
  } else {
    j["schedule"] = {{"rounds", exp.baseline_cfg.rounds},
                     {"step_size", exp.baseline_cfg.step_size},
                     {"delta_prime", exp.baseline_cfg.delta_prime},
                     {"seed", exp.baseline_cfg.seed}};
  }

  nlohmann::ordered_json grad_norms = nlohmann::ordered_json::array();
  nlohmann::ordered_json diameters = nlohmann::ordered_json::array();
  for (const EpochStats& e : result.epochs) {
    grad_norms.push_back(e.grad_norm);
    diameters.push_back(e.diameter_max);
  }
  j["candidate_grad_norms"] = grad_norms;
  j["epoch_diameters"] = diameters;
  j["output_index"] = result.output_index;
  j["oracle_calls"] = result.oracle_calls;
  j["function_evals"] = result.function_evals;
  j["consensus"] = {{"bound", result.consensus_bound},
                    {"max_disagreement", result.max_disagreement},
                    {"violations", result.consensus_violations}};

  std::optional<double> final_acc;
  for (auto it = result.trace.rbegin(); it != result.trace.rend(); ++it)
    if (it->test_acc) {
      final_acc = it->test_acc;
      break;
    }
  if (final_acc) j["final_test_acc"] = *final_acc;
  return j.dump(2) + "\n";
}

std::string resolved_config_text(const KvConfig& resolved) {
  // Group by section; std::map keeps both sections and keys sorted.
  std::map<std::string, std::map<std::string, std::string>> sections;
  for (const auto& [key, value] : resolved.values()) {
    const auto dotted = key.find('.');
    if (dotted == std::string::npos)
      sections[""][key] = value;
    else
      sections[key.substr(0, dotted)][key.substr(dotted + 1)] = value;
  }
  std::string out;
  for (const auto& [section, keys] : sections) {
    if (!section.empty()) out += "[" + section + "]\n";
    for (const auto& [key, value] : keys) out += key + " = " + value + "\n";
    out += "\n";
  }
  return out;
}

void write_artifacts(const Experiment& exp, const RunResult& result,
                     const std::string& out_dir) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  write_file((dir / "trace.csv").string(), trace_csv(result, exp.solver));
  write_file((dir / "summary.json").string(), summary_json(exp, result));
  write_file((dir / "resolved_config.cfg").string(), resolved_config_text(exp.resolved));
  save_matrix(exp.matrix, (dir / "matrix.txt").string());

  std::string candidates;
  for (std::size_t k = 0; k < result.candidates.size(); ++k) {
    candidates += std::to_string(k + 1);
    for (const double v : result.candidates[k]) {
      candidates += ' ';
      candidates += fmt17(v);
    }
    candidates += '\n';
  }
  write_file((dir / "candidates.tsv").string(), candidates);

  std::string output = std::to_string(result.output_index + 1);
  for (const double v : result.output) {
    output += ' ';
    output += fmt17(v);
  }
  write_file((dir / "w_out.tsv").string(), output + "\n");
}

CommMatrix topology_from_tokens(const std::vector<std::string>& tokens,
                                const std::string& base_dir) {
  if (tokens.empty()) throw ConfigError("topology: empty spec");
  const std::string& kind = tokens.front();
  std::map<std::string, std::string> params;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos)
      throw ConfigError("topology: expected key=value, got '" + tokens[i] + "'");
    params[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
  }
  const auto get = [&](const std::string& key) -> std::string {
    const auto it = params.find(key);
    if (it == params.end()) throw ConfigError("topology " + kind + ": missing " + key);
    return it->second;
  };

  try {
    if (kind == "ring") return ring_matrix(std::stoi(get("n")), std::stoi(get("m")));
    if (kind == "erdos")
      return erdos_renyi_matrix(std::stoi(get("n")), std::stod(get("p")),
                                std::stoull(params.contains("seed") ? params["seed"] : "0"));
    if (kind == "uniform") return uniform_matrix(std::stoi(get("n")));
    if (kind == "file") {
      std::string path = get("path");
      if (!base_dir.empty() && !fs::path(path).is_absolute())
        path = (fs::path(base_dir) / path).string();
      return load_matrix(path);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("topology: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(std::string("topology: ") + e.what());
  }
  throw ConfigError("topology: unknown kind '" + kind + "'");
}

int cmd_run(const std::string& config_path, const std::string& out_dir_override) {
  try {
    const KvConfig cfg = KvConfig::load(config_path);
    Experiment exp = resolve_experiment(cfg);
    if (!out_dir_override.empty()) {
      exp.out_dir = out_dir_override;
      exp.resolved.set("run.out_dir", out_dir_override);
    }
    if (exp.out_dir.empty()) throw ConfigError("run.out_dir is required (or pass --out)");
    if (exp.diameter_guard_warning)
      std::cerr << "warning: sqrt(n)/(1-rho) < 2; the intra-epoch diameter guarantee "
                   "does not apply at this scale\n";

    const RunResult result = execute(exp);
    write_artifacts(exp, result, exp.out_dir);
    std::cout << "run complete: " << exp.out_dir << " (" << result.candidates.size()
              << " candidates, " << result.oracle_calls << " oracle calls)\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_topology(const std::vector<std::string>& tokens, const std::string& export_path) {
  try {
    const CommMatrix m = topology_from_tokens(tokens);
    std::cout << "kind = " << tokens.front() << "\n";
    std::cout << "n = " << m.n << "\n";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", m.rho);
    std::cout << "rho = " << buf << "\n";
    const auto violations = validate(m);
    if (violations.empty()) {
      std::cout << "validation = ok\n";
    } else {
      std::cout << "validation = FAILED:";
      for (const auto& v : violations) std::cout << " " << v;
      std::cout << "\n";
    }
    if (!export_path.empty()) {
      save_matrix(m, export_path);
      std::cout << "exported = " << export_path << "\n";
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_eval(const std::string& run_dir, double delta, std::uint64_t samples) {
  try {
    if (!(delta > 0)) {
      std::cerr << "validation error: --delta must be positive\n";
      return 2;
    }
    const fs::path dir(run_dir);
    if (!fs::exists(dir / "resolved_config.cfg") || !fs::exists(dir / "candidates.tsv")) {
      std::cerr << "validation error: " << run_dir << " is not a finished run directory\n";
      return 2;
    }

    const KvConfig cfg = KvConfig::load((dir / "resolved_config.cfg").string());
    const Experiment exp = resolve_experiment(cfg);

    RunResult result;
    std::istringstream candidates(read_file((dir / "candidates.tsv").string()));
    std::string line;
    while (std::getline(candidates, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      std::size_t index = 0;
      row >> index;
      Vec candidate;
      double v = 0.0;
      while (row >> v) candidate.push_back(v);
      result.candidates.push_back(std::move(candidate));
    }
    if (result.candidates.empty()) {
      std::cerr << "validation error: no candidates in " << run_dir << "\n";
      return 2;
    }

    EvalConfig eval_cfg;
    eval_cfg.delta = delta;
    eval_cfg.proxy_samples = samples;
    eval_cfg.seed = cfg.get_u64("solver.seed", 0) ^ 0xE7A1ULL;
    const EvalSummary summary = evaluate_run(result, *exp.suite, eval_cfg);
    write_file((dir / "stationarity.json").string(), to_json(summary));
    std::cout << "stationarity written: mean proxy " << summary.mean.smoothed_grad_norm.estimate
              << " (stderr " << summary.mean.smoothed_grad_norm.std_error << "), mean hull "
              << summary.mean.goldstein_estimate << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 1;
  }
}

namespace {

struct TraceTable {
  std::vector<std::string> header;              // without the round column
  std::map<std::uint64_t, std::vector<std::string>> rows;  // keyed by round
};

TraceTable read_trace(const std::string& path) {
  TraceTable table;
  std::istringstream in(read_file(path));
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (start <= line.size()) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string::npos ? std::string::npos
                                                                    : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cells.size() < 2) continue;
    if (first) {
      first = false;
      for (std::size_t c = 0; c < cells.size(); ++c)
        if (c != 1) table.header.push_back(cells[c]);
      continue;
    }
    const std::uint64_t round = std::stoull(cells[1]);
    std::vector<std::string> row;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (c != 1) row.push_back(cells[c]);
    table.rows.emplace(round, std::move(row));
  }
  return table;
}

}  // namespace

int cmd_compare(const std::vector<std::string>& run_dirs, const std::string& output_path) {
  try {
    if (run_dirs.empty()) {
      std::cerr << "validation error: compare needs at least one run directory\n";
      return 2;
    }
    std::vector<TraceTable> tables;
    std::vector<std::string> names;
    std::set<std::uint64_t> rounds;
    for (const std::string& dir : run_dirs) {
      const fs::path trace = fs::path(dir) / "trace.csv";
      if (!fs::exists(trace)) {
        std::cerr << "validation error: missing " << trace.string() << "\n";
        return 2;
      }
      tables.push_back(read_trace(trace.string()));
      std::string name = fs::path(dir).filename().string();
      if (name.empty()) name = dir;
      names.push_back(name);
      for (const auto& [round, row] : tables.back().rows) rounds.insert(round);
    }

    std::size_t min_rows = tables.front().rows.size(), max_rows = min_rows;
    for (const TraceTable& t : tables) {
      min_rows = std::min(min_rows, t.rows.size());
      max_rows = std::max(max_rows, t.rows.size());
    }
    if (min_rows != max_rows)
      std::cerr << "warning: runs have different trace lengths; missing cells left empty\n";

    std::string out = "round";
    for (std::size_t r = 0; r < tables.size(); ++r)
      for (const std::string& column : tables[r].header) out += "," + names[r] + "/" + column;
    out += "\n";
    for (const std::uint64_t round : rounds) {
      out += std::to_string(round);
      for (const TraceTable& t : tables) {
        const auto it = t.rows.find(round);
        for (std::size_t c = 0; c < t.header.size(); ++c) {
          out += ",";
          if (it != t.rows.end() && c < it->second.size()) out += it->second[c];
        }
      }
      out += "\n";
    }

    if (output_path.empty()) {
      std::cout << out;
    } else {
      write_file(output_path, out);
      std::cout << "merged CSV written to " << output_path << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace medol::harness
