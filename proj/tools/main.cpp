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

#include <CLI11.hpp>

#include <string>
#include <vector>

#include "harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Decentralized nonsmooth nonconvex optimization simulator"};
  app.require_subcommand(1);

  std::string config_path, out_override;
  CLI::App* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("config", config_path, "Path to the experiment config")->required();
  run->add_option("--out", out_override, "Override run.out_dir");

  std::vector<std::string> topo_tokens;
  std::string export_path;
  CLI::App* topology =
      app.add_subcommand("topology", "Inspect a communication matrix spec");
  topology->add_option("spec", topo_tokens, "e.g.: ring n=20 m=7 | erdos n=20 p=0.5 seed=7")
      ->required()
      ->expected(-1);
  topology->add_option("--export", export_path, "Write the matrix in plain-text form");

  std::string eval_dir;
  double eval_delta = 0.0;
  std::uint64_t eval_samples = 1000;
  CLI::App* eval = app.add_subcommand("eval", "Stationarity metrics for a finished run");
  eval->add_option("dir", eval_dir, "Run directory")->required();
  eval->add_option("--delta", eval_delta, "Goldstein radius")->required();
  eval->add_option("--samples", eval_samples, "Monte-Carlo samples per candidate");

  std::vector<std::string> compare_dirs;
  std::string compare_out;
  CLI::App* compare = app.add_subcommand("compare", "Merge run traces aligned on round index");
  compare->add_option("dirs", compare_dirs, "Run directories");
  compare->add_option("-o,--output", compare_out, "Write the merged CSV here (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return medol::harness::cmd_run(config_path, out_override);
  if (topology->parsed()) return medol::harness::cmd_topology(topo_tokens, export_path);
  if (eval->parsed()) return medol::harness::cmd_eval(eval_dir, eval_delta, eval_samples);
  if (compare->parsed()) return medol::harness::cmd_compare(compare_dirs, compare_out);
  return 2;
}
