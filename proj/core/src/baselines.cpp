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

#include "medol/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "medol/parallel.hpp"
#include "medol/smoothing.hpp"

namespace medol {

namespace {

RunResult run_baseline(const BaselineConfig& cfg, const ObjectiveSuite& suite,
                       const CommMatrix& m, const MetricHooks& hooks, OracleKind oracle) {
  if (cfg.rounds < 1) throw std::invalid_argument("baseline: rounds must be >= 1");
  if (!(cfg.step_size > 0)) throw std::invalid_argument("baseline: step_size must be positive");
  if (cfg.trace_every < 1) throw std::invalid_argument("baseline: trace_every must be >= 1");
  if (oracle == OracleKind::kZero && !(cfg.delta_prime > 0))
    throw std::invalid_argument("baseline: zero-order needs delta_prime > 0");
  if (m.n != suite.agents())
    throw std::invalid_argument("baseline: communication matrix size mismatch");
  if (!cfg.y0.empty() && cfg.y0.size() != static_cast<std::size_t>(suite.dim()))
    throw std::invalid_argument("baseline: warm start dimension mismatch");

  const int n = suite.agents();
  const int d = suite.dim();

  std::vector<Rng> xi_streams, z_streams;
  xi_streams.reserve(static_cast<std::size_t>(n));
  z_streams.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto agent = static_cast<std::uint64_t>(i);
    xi_streams.push_back(agent_stream(cfg.seed, agent, StreamPurpose::kSampleIndex));
    z_streams.push_back(agent_stream(cfg.seed, agent, StreamPurpose::kSmoothing));
  }

  const Vec start = cfg.y0.empty() ? Vec(static_cast<std::size_t>(d), 0.0) : cfg.y0;
  std::vector<Vec> y(static_cast<std::size_t>(n), start);
  std::vector<Vec> x = y, y_next = y;

  RunResult result;
  for (std::uint64_t t = 1; t <= cfg.rounds; ++t) {
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
      const LocalObjective& local = suite.local(static_cast<int>(i));
      const std::uint64_t xi = xi_streams[i].index(local.sample_count());
      Vec g = oracle == OracleKind::kZero
                  ? zero_order_gradient(local, y[i], cfg.delta_prime, xi, z_streams[i]).g
                  : local.subgradient(y[i], xi);
      x[i] = y[i];
      axpy(-cfg.step_size, g, x[i]);
    });

    gossip_into(m, x, y_next);
    result.oracle_calls += static_cast<std::uint64_t>(n);
    result.function_evals += static_cast<std::uint64_t>(n) * (oracle == OracleKind::kZero ? 2 : 1);

    for (int i = 0; i < n; ++i)
      if (!all_finite(y_next[static_cast<std::size_t>(i)]))
        throw std::runtime_error("baseline: non-finite value at round " + std::to_string(t) +
                                 ", agent " + std::to_string(i));

    Vec y_bar = mean_of(y_next);
    double disagreement = 0.0;
    for (int i = 0; i < n; ++i)
      disagreement = std::max(disagreement, dist2(y_next[static_cast<std::size_t>(i)], y_bar));
    result.max_disagreement = std::max(result.max_disagreement, disagreement);

    if (t % cfg.trace_every == 0 || t == cfg.rounds) {
      TraceRecord rec;
      rec.epoch = 1;
      rec.round = t;
      rec.disagreement_max = disagreement;
      rec.grad_norm = norm2(suite.global_subgradient(y_bar));
      if (hooks.test_accuracy) rec.test_acc = hooks.test_accuracy(y_bar);
      if (hooks.proxy_norm) rec.proxy_norm = hooks.proxy_norm(y_bar).first;
      rec.oracle_calls = result.oracle_calls;
      result.trace.push_back(rec);
    }

    std::swap(y, y_next);
  }

  result.candidates.push_back(mean_of(y));
  result.output = result.candidates.front();
  result.output_index = 0;
  return result;
}

}  // namespace

RunResult run_dpsgd(const BaselineConfig& cfg, const ObjectiveSuite& suite, const CommMatrix& m,
                    MetricHooks hooks) {
  return run_baseline(cfg, suite, m, hooks, OracleKind::kFirst);
}

RunResult run_dgfm(const BaselineConfig& cfg, const ObjectiveSuite& suite, const CommMatrix& m,
                   MetricHooks hooks) {
  return run_baseline(cfg, suite, m, hooks, OracleKind::kZero);
}

}  // namespace medol
