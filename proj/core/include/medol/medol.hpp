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

#ifndef MEDOL_MEDOL_HPP
#define MEDOL_MEDOL_HPP

#include <cstdint>
#include <functional>
#include <utility>

#include "medol/objectives.hpp"
#include "medol/online_learner.hpp"
#include "medol/rng.hpp"
#include "medol/smoothing.hpp"
#include "medol/topology.hpp"
#include "medol/trace.hpp"

namespace medol {

/// Solver hyper-parameters for the multi-epoch decentralized online
/// learning driver. delta_prime = 0 is only meaningful with the
/// first-order oracle.
struct RunConfig {
  int K = 1;              // epochs
  std::uint64_t T = 1;    // rounds per epoch
  double D = 1.0;         // learner domain radius
  double eta = 0.1;       // learner rate
  double delta_prime = 0.0;
  OracleKind oracle = OracleKind::kFirst;
  std::uint64_t seed = 0;
  int n = 1;
  int d = 1;
  std::uint64_t trace_every = 1;
  int batch_size = 1;          // estimator draws averaged per oracle call
  bool track_diameter = true;  // store epoch points for the diameter stat
  Vec y0;                      // optional warm start; empty means zeros
};

/// Optional per-candidate metrics evaluated at epoch boundaries.
struct MetricHooks {
  std::function<double(const Vec&)> test_accuracy;
  std::function<std::pair<double, double>(const Vec&)> proxy_norm;  // (estimate, std_error)
};

/// Epoch/round driver, exposed so tests can step one round at a time and
/// inspect the per-agent state. Typical use goes through run_medol().
class MedolDriver {
 public:
  MedolDriver(const RunConfig& cfg, const ObjectiveSuite& suite, const CommMatrix& m,
              MetricHooks hooks = {});

  /// Test hook replacing the s ~ unif[0,1] draw; receives
  /// (epoch, round_in_epoch, agent), both 1-based.
  void set_segment_override(std::function<double(int, std::uint64_t, int)> fn);

  bool done() const;

  /// Advances one round (starting/closing epochs as needed).
  void step();

  /// Runs to completion and finalizes the result.
  RunResult finish();

  // Inspection of the last completed round.
  int epoch() const { return epoch_; }
  std::uint64_t round_in_epoch() const { return round_; }
  const std::vector<Vec>& x() const { return x_; }
  const std::vector<Vec>& w() const { return w_; }
  const std::vector<Vec>& y() const { return y_; }
  const std::vector<Vec>& g() const { return g_; }
  const std::vector<Vec>& deltas() const { return delta_; }

 private:
  void begin_epoch();
  void end_epoch();

  const RunConfig cfg_;
  const ObjectiveSuite& suite_;
  const CommMatrix& m_;
  MetricHooks hooks_;
  std::function<double(int, std::uint64_t, int)> segment_override_;

  LearnerState learner_;
  std::vector<Rng> xi_streams_, s_streams_, z_streams_;

  std::vector<Vec> y_, y_next_, x_, w_, delta_, g_, g_prev_;
  Vec candidate_accum_;
  std::vector<Vec> epoch_points_;  // w's of the open epoch when tracking

  RunResult result_;
  int epoch_ = 0;            // current epoch, 1-based once started
  std::uint64_t round_ = 0;  // completed rounds in the current epoch
  std::uint64_t global_round_ = 0;
  bool epoch_open_ = false;
};

/// Runs the full driver: K epochs of T rounds; per round each agent
/// obtains its action from the online learner, forms x = y_prev + delta
/// and the query point w = y_prev + s * delta, gossips x into the next
/// y, and feeds the configured gradient estimate at w back to the
/// learner. Epoch candidates are the exact averages of all nT query
/// points; the output is drawn uniformly from the K candidates.
RunResult run_medol(const RunConfig& cfg, const ObjectiveSuite& suite, const CommMatrix& m,
                    MetricHooks hooks = {});

/// Exact mean of a T x n block of vectors, agents innermost, in fixed
/// index order.
Vec candidate_average(const std::vector<std::vector<Vec>>& rounds);

}  // namespace medol

#endif  // MEDOL_MEDOL_HPP
