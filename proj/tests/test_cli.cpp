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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "harness.hpp"

using namespace medol;
using namespace medol::harness;
namespace fs = std::filesystem;

namespace {

const std::string kCli = MEDOL_CLI_PATH;
const std::string kRepo = MEDOL_SOURCE_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("medol_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
  const int status = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string small_config(const std::string& out_dir, const std::string& extra = "") {
  return "[dataset]\nkind = synthetic\nsamples = 120\ndim = 6\nseed = 2\n"
         "test_fraction = 0.25\n"
         "[topology]\nkind = ring\nn = 4\nm = 3\n"
         "[solver]\nkind = medol\noracle = first\nseed = 5\n"
         "[schedule]\nmode = manual\nK = 3\nT = 8\nD = 0.01\neta = 1e-4\n" +
         extra + "[run]\nout_dir = " + out_dir + "\n";
}

}  // namespace

TEST_CASE("key=value config parsing") {
  const KvConfig cfg = KvConfig::parse(
      "top = 1\n[a]\nx = 1.5  # comment\ny = hello\n\n[b]\nflag = true\n");
  CHECK(cfg.get_u64("top") == 1);
  CHECK(cfg.get_double("a.x") == 1.5);
  CHECK(cfg.get_string("a.y") == "hello");
  CHECK(cfg.get_bool("b.flag", false));
  CHECK(cfg.get_int("b.missing", 7) == 7);

  CHECK_THROWS_AS(KvConfig::parse("x = 1\nx = 2\n"), ConfigError);
  CHECK_THROWS_AS(KvConfig::parse("[a\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(KvConfig::parse("just words\n"), ConfigError);
  CHECK_THROWS_AS(KvConfig::parse("k = notanumber").get_double("k"), ConfigError);
}

TEST_CASE("experiment resolution pins a reproducible config") {
  TempDir tmp;
  const KvConfig cfg = KvConfig::parse(small_config((tmp.path / "r").string()));
  const Experiment exp = resolve_experiment(cfg);
  CHECK(exp.solver == "medol");
  CHECK(exp.run_cfg.K == 3);
  CHECK(exp.matrix.n == 4);
  CHECK(exp.train.size() == 90);
  CHECK(exp.test.size() == 30);
  CHECK(exp.suite->agents() == 4);
  // resolved topology always points at the exported matrix
  CHECK(exp.resolved.get_string("topology.kind") == "file");
  CHECK(exp.resolved.get_string("schedule.mode") == "manual");

  const std::string text = resolved_config_text(exp.resolved);
  const KvConfig back = KvConfig::parse(text);
  CHECK(back.get_string("solver.kind") == "medol");
  CHECK(back.get_u64("schedule.T") == 8);
}

TEST_CASE("schedule modes resolve through the theorem formulas") {
  TempDir tmp;
  std::string text = small_config((tmp.path / "r").string());
  text.replace(text.find("mode = manual\nK = 3\nT = 8\nD = 0.01\neta = 1e-4\n"),
               std::string("mode = manual\nK = 3\nT = 8\nD = 0.01\neta = 1e-4\n").size(),
               "mode = experiment\ndelta = 0.1\nN = 600\ngamma = 1\nc_T = 1\n");
  const Experiment exp = resolve_experiment(KvConfig::parse(text));
  CHECK(exp.run_cfg.T >= 3);
  CHECK(exp.run_cfg.eta == doctest::Approx(0.01 * exp.run_cfg.D));
  CHECK(static_cast<std::uint64_t>(exp.run_cfg.K) * exp.run_cfg.T >= 600);
  // provenance of the pre-run scheduling decision is kept
  CHECK(exp.resolved.get_string("schedule.provenance") == "experiment");
  CHECK(exp.resolved.get_string("schedule.mode") == "manual");
}

TEST_CASE("trace csv schema") {
  RunResult result;
  TraceRecord a;
  a.epoch = 1;
  a.round = 10;
  a.disagreement_max = 0.5;
  a.oracle_calls = 40;
  TraceRecord b = a;
  b.round = 20;
  b.grad_norm = 1.25;
  b.test_acc = 0.75;
  result.trace = {a, b};

  const std::string csv = trace_csv(result, "medol");
  std::istringstream lines(csv);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(header == "epoch,round,solver,grad_norm,proxy_norm,test_acc,disagreement_max,oracle_calls");
  CHECK(row1 == "1,10,medol,,,,0.5,40");
  CHECK(row2 == "1,20,medol,1.25,,0.75,0.5,40");
}

TEST_CASE("cmd_run writes the full artifact set") {
  TempDir tmp;
  const fs::path cfg_path = tmp.path / "exp.cfg";
  std::ofstream(cfg_path) << small_config((tmp.path / "out").string());
  CHECK(cmd_run(cfg_path.string()) == 0);
  for (const char* artifact :
       {"trace.csv", "summary.json", "resolved_config.cfg", "candidates.tsv", "matrix.txt",
        "w_out.tsv"})
    CHECK(fs::exists(tmp.path / "out" / artifact));

  // summary carries one gradient norm per epoch candidate
  const std::string summary = slurp(tmp.path / "out" / "summary.json");
  CHECK(summary.find("candidate_grad_norms") != std::string::npos);

  // rerunning the resolved config reproduces trace.csv byte for byte
  CHECK(cmd_run((tmp.path / "out" / "resolved_config.cfg").string(),
                (tmp.path / "out2").string()) == 0);
  CHECK(slurp(tmp.path / "out" / "trace.csv") == slurp(tmp.path / "out2" / "trace.csv"));
}

TEST_CASE("cmd_eval writes stationarity.json") {
  TempDir tmp;
  const fs::path cfg_path = tmp.path / "exp.cfg";
  std::ofstream(cfg_path) << small_config((tmp.path / "out").string());
  REQUIRE(cmd_run(cfg_path.string()) == 0);

  CHECK(cmd_eval((tmp.path / "out").string(), 0.1, 200) == 0);
  const std::string json = slurp(tmp.path / "out" / "stationarity.json");
  CHECK(json.find("\"mean\"") != std::string::npos);
  CHECK(json.find("\"per_candidate\"") != std::string::npos);

  CHECK(cmd_eval((tmp.path / "nowhere").string(), 0.1, 200) == 2);
  CHECK(cmd_eval((tmp.path / "out").string(), -1.0, 200) == 2);
}

TEST_CASE("cmd_compare merges traces on the round index") {
  TempDir tmp;
  const fs::path cfg_a = tmp.path / "a.cfg";
  std::ofstream(cfg_a) << small_config((tmp.path / "a").string());
  REQUIRE(cmd_run(cfg_a.string()) == 0);

  // A baseline with a different length.
  const std::string baseline_cfg =
      "[dataset]\nkind = synthetic\nsamples = 120\ndim = 6\nseed = 2\n"
      "[topology]\nkind = ring\nn = 4\nm = 3\n"
      "[solver]\nkind = dpsgd\nseed = 5\ntrace_every = 2\n"
      "[baseline]\nrounds = 10\nstep_size = 0.01\n"
      "[run]\nout_dir = " +
      (tmp.path / "b").string() + "\n";
  const fs::path cfg_b = tmp.path / "b.cfg";
  std::ofstream(cfg_b) << baseline_cfg;
  REQUIRE(cmd_run(cfg_b.string()) == 0);

  CHECK(cmd_compare({(tmp.path / "a").string(), (tmp.path / "b").string()},
                    (tmp.path / "merged.csv").string()) == 0);
  std::istringstream merged(slurp(tmp.path / "merged.csv"));
  std::string header;
  std::getline(merged, header);
  CHECK(header.find("round,a/epoch") == 0);
  CHECK(header.find("b/grad_norm") != std::string::npos);

  CHECK(cmd_compare({}, "") == 2);
}

TEST_CASE("cli binary exit codes") {
  TempDir tmp;

  SUBCASE("topology prints rho and validates") {
    CHECK(run_cli("topology ring n=20 m=7") == 0);
    CHECK(run_cli("topology ring n=20 m=6") == 2);  // even neighbor count
    CHECK(run_cli("topology uniform n=5") == 0);
  }
  SUBCASE("run fails validation with exit 2") {
    const fs::path bad = tmp.path / "bad.cfg";
    std::ofstream(bad) << small_config((tmp.path / "out").string(),
                                       "");  // then break the topology
    std::string text = slurp(bad);
    text.replace(text.find("m = 3"), 5, "m = 4");
    std::ofstream(bad) << text;
    CHECK(run_cli("run " + bad.string()) == 2);
  }
  SUBCASE("missing config exits 2") {
    CHECK(run_cli("run " + (tmp.path / "nope.cfg").string()) == 2);
  }
  SUBCASE("preset config runs end to end") {
    const std::string preset = kRepo + "/configs/presets/fig1_ijcnn_small.cfg";
    REQUIRE(fs::exists(preset));
    CHECK(run_cli("run " + preset + " --out " + (tmp.path / "preset_out").string()) == 0);
    CHECK(fs::exists(tmp.path / "preset_out" / "summary.json"));
  }
}

TEST_CASE("same config and seed give byte-identical traces across invocations") {
  TempDir tmp;
  const fs::path cfg_path = tmp.path / "exp.cfg";
  std::ofstream(cfg_path) << small_config((tmp.path / "r1").string());
  REQUIRE(cmd_run(cfg_path.string(), (tmp.path / "r1").string()) == 0);
  REQUIRE(cmd_run(cfg_path.string(), (tmp.path / "r2").string()) == 0);
  CHECK(slurp(tmp.path / "r1" / "trace.csv") == slurp(tmp.path / "r2" / "trace.csv"));
}
