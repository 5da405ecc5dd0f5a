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

#ifndef MEDOL_BASELINES_HPP
#define MEDOL_BASELINES_HPP

#include <cstdint>

#include "medol/medol.hpp"
#include "medol/objectives.hpp"
#include "medol/topology.hpp"
#include "medol/trace.hpp"

namespace medol {

/// Reference decentralized solvers used as comparison curves:
/// per round, each agent takes a local (sub)gradient or zero-order step
/// and the iterates are gossip-mixed. Simplified faithful versions, not
/// reproductions of the originals' full variants.
struct BaselineConfig {
  std::uint64_t rounds = 1;
  double step_size = 0.01;
  double delta_prime = 0.0;  // DGFM only
  std::uint64_t seed = 0;
  std::uint64_t trace_every = 1;
  Vec y0;  // optional warm start; empty means zeros
};

/// Decentralized projected-free stochastic subgradient descent:
/// x_i = y_i - step * subgradient(y_i, xi); y = gossip(x).
RunResult run_dpsgd(const BaselineConfig& cfg, const ObjectiveSuite& suite, const CommMatrix& m,
                    MetricHooks hooks = {});

/// Decentralized gradient-free method: the step direction comes from the
/// two-point sphere estimator at y_i. Requires delta_prime > 0.
RunResult run_dgfm(const BaselineConfig& cfg, const ObjectiveSuite& suite, const CommMatrix& m,
                   MetricHooks hooks = {});

}  // namespace medol

#endif  // MEDOL_BASELINES_HPP
