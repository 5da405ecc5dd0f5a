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

#include "medol/medol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "medol/parallel.hpp"

namespace medol {

namespace {

void validate_config(const RunConfig& cfg, const ObjectiveSuite& suite, const CommMatrix& m) {
  if (cfg.K < 1) throw std::invalid_argument("run_medol: K must be >= 1");
  if (cfg.T < 1) throw std::invalid_argument("run_medol: T must be >= 1");
  if (!(cfg.D > 0)) throw std::invalid_argument("run_medol: D must be positive");
  if (!(cfg.eta > 0)) throw std::invalid_argument("run_medol: eta must be positive");
  if (cfg.delta_prime < 0) throw std::invalid_argument("run_medol: delta_prime must be >= 0");
  if (cfg.oracle == OracleKind::kZero && !(cfg.delta_prime > 0))
    throw std::invalid_argument("run_medol: zero-order oracle needs delta_prime > 0");
  if (cfg.batch_size < 1) throw std::invalid_argument("run_medol: batch_size must be >= 1");
  if (cfg.trace_every < 1) throw std::invalid_argument("run_medol: trace_every must be >= 1");
  if (cfg.n != suite.agents())
    throw std::invalid_argument("run_medol: agent count does not match the suite");
  if (cfg.d != suite.dim())
    throw std::invalid_argument("run_medol: dimension does not match the suite");
  if (m.n != cfg.n)
    throw std::invalid_argument("run_medol: communication matrix size mismatch");
  if (!cfg.y0.empty() && cfg.y0.size() != static_cast<std::size_t>(cfg.d))
    throw std::invalid_argument("run_medol: warm start dimension mismatch");
}

}  // namespace

Vec candidate_average(const std::vector<std::vector<Vec>>& rounds) {
  if (rounds.empty() || rounds.front().empty())
    throw std::invalid_argument("candidate_average: empty input");
  Vec acc(rounds.front().front().size(), 0.0);
  std::size_t count = 0;
  for (const auto& round : rounds) {
    for (const Vec& v : round) {
      axpy(1.0, v, acc);
      ++count;
    }
  }
  scale(acc, 1.0 / static_cast<double>(count));
  return acc;
}

MedolDriver::MedolDriver(const RunConfig& cfg, const ObjectiveSuite& suite, const CommMatrix& m,
                         MetricHooks hooks)
    : cfg_(cfg),
      suite_(suite),
      m_(m),
      hooks_(std::move(hooks)),
      learner_(cfg.n, cfg.d, cfg.D, cfg.eta) {
  validate_config(cfg_, suite_, m_);

  xi_streams_.reserve(static_cast<std::size_t>(cfg_.n));
  s_streams_.reserve(static_cast<std::size_t>(cfg_.n));
  z_streams_.reserve(static_cast<std::size_t>(cfg_.n));
  for (int i = 0; i < cfg_.n; ++i) {
    const auto agent = static_cast<std::uint64_t>(i);
    xi_streams_.push_back(agent_stream(cfg_.seed, agent, StreamPurpose::kSampleIndex));
    s_streams_.push_back(agent_stream(cfg_.seed, agent, StreamPurpose::kSegment));
    z_streams_.push_back(agent_stream(cfg_.seed, agent, StreamPurpose::kSmoothing));
  }

  const Vec start = cfg_.y0.empty() ? Vec(static_cast<std::size_t>(cfg_.d), 0.0) : cfg_.y0;
  y_.assign(static_cast<std::size_t>(cfg_.n), start);
  y_next_ = y_;
  x_ = y_;
  w_ = y_;
  delta_.assign(static_cast<std::size_t>(cfg_.n), Vec(static_cast<std::size_t>(cfg_.d), 0.0));
  g_ = delta_;
  g_prev_ = delta_;
  candidate_accum_.assign(static_cast<std::size_t>(cfg_.d), 0.0);

  result_.consensus_bound =
      cfg_.D * std::sqrt(static_cast<double>(cfg_.n)) / (1.0 - m_.rho);
}

void MedolDriver::set_segment_override(std::function<double(int, std::uint64_t, int)> fn) {
  segment_override_ = std::move(fn);
}

bool MedolDriver::done() const {
  return epoch_ >= cfg_.K && round_ >= cfg_.T && !epoch_open_;
}

void MedolDriver::begin_epoch() {
  ++epoch_;
  round_ = 0;
  epoch_open_ = true;
  restart(learner_);
  std::fill(g_prev_.begin(), g_prev_.end(), Vec(static_cast<std::size_t>(cfg_.d), 0.0));
  std::fill(candidate_accum_.begin(), candidate_accum_.end(), 0.0);
  epoch_points_.clear();
  // y carries over from the previous epoch unchanged.
}

void MedolDriver::end_epoch() {
  const double inv = 1.0 / (static_cast<double>(cfg_.n) * static_cast<double>(cfg_.T));
  Vec candidate = candidate_accum_;
  scale(candidate, inv);

  EpochStats stats;
  stats.grad_norm = norm2(suite_.global_subgradient(candidate));
  if (cfg_.track_diameter) {
    double diameter = 0.0;
    for (const Vec& point : epoch_points_)
      diameter = std::max(diameter, dist2(point, candidate));
    stats.diameter_max = diameter;
  }
  result_.epochs.push_back(stats);

  // Fold the metric snapshots into the row logged for the closing round.
  TraceRecord rec = result_.trace.back();
  result_.trace.pop_back();
  rec.grad_norm = stats.grad_norm;
  if (hooks_.test_accuracy) rec.test_acc = hooks_.test_accuracy(candidate);
  if (hooks_.proxy_norm) rec.proxy_norm = hooks_.proxy_norm(candidate).first;
  rec.oracle_calls = result_.oracle_calls;
  result_.trace.push_back(rec);

  result_.candidates.push_back(std::move(candidate));
  epoch_points_.clear();
  epoch_open_ = false;
}

void MedolDriver::step() {
  if (done()) throw std::logic_error("MedolDriver::step: run already finished");
  if (!epoch_open_) begin_epoch();

  const int n = cfg_.n;

  // Per-agent action, query point, and segment draw. Independent across
  // agents; every write lands in the agent's own slot.
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const int agent = static_cast<int>(i);
    delta_[i] = learner_step(learner_, agent, g_prev_[i]);
    x_[i] = add(y_[i], delta_[i]);
    const double s = segment_override_
                         ? segment_override_(epoch_, round_ + 1, agent)
                         : s_streams_[i].uniform01();
    w_[i] = y_[i];
    axpy(s, delta_[i], w_[i]);
  });

  gossip_into(m_, x_, y_next_);
  learner_mix(learner_, m_, delta_);

  // Oracle queries at the w's.
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const LocalObjective& local = suite_.local(static_cast<int>(i));
    Vec acc(static_cast<std::size_t>(cfg_.d), 0.0);
    for (int b = 0; b < cfg_.batch_size; ++b) {
      const std::uint64_t xi = xi_streams_[i].index(local.sample_count());
      if (cfg_.oracle == OracleKind::kZero) {
        axpy(1.0, zero_order_gradient(local, w_[i], cfg_.delta_prime, xi, z_streams_[i]).g, acc);
      } else {
        axpy(1.0, first_order_gradient(local, w_[i], cfg_.delta_prime, xi, z_streams_[i]).g, acc);
      }
    }
    if (cfg_.batch_size > 1) scale(acc, 1.0 / static_cast<double>(cfg_.batch_size));
    g_[i] = std::move(acc);
  });

  ++round_;
  ++global_round_;
  result_.oracle_calls += static_cast<std::uint64_t>(n) * cfg_.batch_size;
  result_.function_evals += static_cast<std::uint64_t>(n) * cfg_.batch_size *
                            (cfg_.oracle == OracleKind::kZero ? 2 : 1);

  // Candidate accumulation: agents in index order, rounds ascending.
  for (int i = 0; i < n; ++i) axpy(1.0, w_[static_cast<std::size_t>(i)], candidate_accum_);
  if (cfg_.track_diameter)
    for (int i = 0; i < n; ++i) epoch_points_.push_back(w_[static_cast<std::size_t>(i)]);

  // Non-finite anywhere aborts with context instead of clamping.
  for (int i = 0; i < n; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i);
    if (!all_finite(y_next_[idx]) || !all_finite(g_[idx]))
      throw std::runtime_error("run_medol: non-finite value at epoch " + std::to_string(epoch_) +
                               ", round " + std::to_string(round_) + ", agent " +
                               std::to_string(i));
  }

  // Disagreement of the post-gossip iterates, checked every round.
  Vec y_bar = mean_of(y_next_);
  double disagreement = 0.0;
  for (int i = 0; i < n; ++i)
    disagreement = std::max(disagreement, dist2(y_next_[static_cast<std::size_t>(i)], y_bar));
  result_.max_disagreement = std::max(result_.max_disagreement, disagreement);
  if (disagreement > result_.consensus_bound + 1e-12) ++result_.consensus_violations;

  if (round_ % cfg_.trace_every == 0 || round_ == cfg_.T) {
    TraceRecord rec;
    rec.epoch = epoch_;
    rec.round = global_round_;
    rec.disagreement_max = disagreement;
    rec.oracle_calls = result_.oracle_calls;
    result_.trace.push_back(rec);
  }

  std::swap(y_, y_next_);
  g_prev_ = g_;  // g_ keeps the latest gradients for inspection

  if (round_ >= cfg_.T) end_epoch();
}

RunResult MedolDriver::finish() {
  while (!done()) step();

  Rng run_stream = agent_stream(cfg_.seed, static_cast<std::uint64_t>(cfg_.n),
                                StreamPurpose::kRun);
  result_.output_index = static_cast<int>(run_stream.index(static_cast<std::uint64_t>(cfg_.K)));
  result_.output = result_.candidates[static_cast<std::size_t>(result_.output_index)];
  return std::move(result_);
}

RunResult run_medol(const RunConfig& cfg, const ObjectiveSuite& suite, const CommMatrix& m,
                    MetricHooks hooks) {
  return MedolDriver(cfg, suite, m, std::move(hooks)).finish();
}

}  // namespace medol
