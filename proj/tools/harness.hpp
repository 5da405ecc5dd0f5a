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

#ifndef MEDOL_TOOLS_HARNESS_HPP
#define MEDOL_TOOLS_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "medol/baselines.hpp"
#include "medol/dataio.hpp"
#include "medol/medol.hpp"
#include "medol/objectives.hpp"
#include "medol/topology.hpp"
#include "medol/trace.hpp"

namespace medol::harness {

/// Everything an experiment needs, resolved from a config file: data,
/// partition, objective suite, topology, solver parameters, and the
/// fully pinned config that reproduces the run byte-for-byte.
struct Experiment {
  Dataset train;
  Dataset test;  // empty when no test split was requested
  Partition part;
  std::optional<ObjectiveSuite> suite;
  CommMatrix matrix;

  std::string solver;  // "medol" | "dpsgd" | "dgfm"
  RunConfig run_cfg;
  BaselineConfig baseline_cfg;

  double eval_delta = 0.0;  // > 0 enables the per-epoch proxy metric
  std::uint64_t proxy_samples = 1000;
  std::string out_dir;
  bool diameter_guard_warning = false;

  KvConfig resolved;
};

Experiment resolve_experiment(const KvConfig& cfg);

/// Runs the resolved experiment (dispatching on solver) with the
/// test-accuracy / proxy metric hooks wired up.
RunResult execute(const Experiment& exp);

/// trace.csv text: header row then one row per trace record, floats at
/// 17 significant digits, empty cells for metrics that were not
/// computed. Rows are already in (epoch, round) order.
std::string trace_csv(const RunResult& result, const std::string& solver);

/// summary.json text (fixed key order).
std::string summary_json(const Experiment& exp, const RunResult& result);

/// The resolved config serialized back to the key = value format.
std::string resolved_config_text(const KvConfig& resolved);

/// Writes trace.csv, summary.json, resolved_config.cfg, candidates.tsv,
/// and matrix.txt into out_dir (created if needed).
void write_artifacts(const Experiment& exp, const RunResult& result,
                     const std::string& out_dir);

/// Topology specs of the form: ring n=20 m=7 | erdos n=20 p=0.5 seed=7 |
/// uniform n=5 | file path=matrix.txt
CommMatrix topology_from_tokens(const std::vector<std::string>& tokens,
                                const std::string& base_dir = "");

// CLI entry points; exit codes: 0 ok, 1 runtime failure, 2 validation.
int cmd_run(const std::string& config_path, const std::string& out_dir_override = "");
int cmd_topology(const std::vector<std::string>& tokens, const std::string& export_path = "");
int cmd_eval(const std::string& run_dir, double delta, std::uint64_t samples);
int cmd_compare(const std::vector<std::string>& run_dirs, const std::string& output_path = "");

}  // namespace medol::harness

#endif  // MEDOL_TOOLS_HARNESS_HPP
