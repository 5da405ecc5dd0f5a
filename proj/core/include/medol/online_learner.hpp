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

#ifndef MEDOL_ONLINE_LEARNER_HPP
#define MEDOL_ONLINE_LEARNER_HPP

#include "medol/topology.hpp"
#include "medol/vec.hpp"

namespace medol {

/// Decentralized online gradient descent over the Euclidean ball of
/// radius D. Each agent's action solves
///   argmin_{||delta|| <= D} eta <delta, g_prev> + 0.5 ||delta - delta_half||^2
/// in closed form (gradient step + ball projection), and actions are
/// gossip-mixed between rounds. delta_half always stays inside the ball
/// because mixing is a convex combination.
struct LearnerState {
  std::vector<Vec> delta_half;  // one per agent
  double domain_radius = 0.0;   // D
  double eta = 0.0;

  LearnerState(int n_agents, int dim, double D, double eta_);
};

/// Euclidean projection onto the ball of radius D centered at 0.
Vec project_ball(Vec v, double radius);

/// The exact minimizer of the agent's per-round objective:
/// project_ball(delta_half[i] - eta * g_prev, D).
Vec learner_step(const LearnerState& state, int agent, const Vec& g_prev);

/// Mixes the round's actions: delta_half = gossip(M, deltas).
void learner_mix(LearnerState& state, const CommMatrix& m, const std::vector<Vec>& deltas);

/// Zeroes all per-agent memory; D and eta are preserved.
void restart(LearnerState& state);

}  // namespace medol

#endif  // MEDOL_ONLINE_LEARNER_HPP
