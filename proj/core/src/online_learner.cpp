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

#include "medol/online_learner.hpp"

#include <stdexcept>

namespace medol {

LearnerState::LearnerState(int n_agents, int dim, double D, double eta_)
    : domain_radius(D), eta(eta_) {
  if (n_agents < 1) throw std::invalid_argument("LearnerState: need at least one agent");
  if (dim < 1) throw std::invalid_argument("LearnerState: dim must be positive");
  if (!(D > 0)) throw std::invalid_argument("LearnerState: domain radius must be positive");
  if (!(eta_ > 0)) throw std::invalid_argument("LearnerState: eta must be positive");
  delta_half.assign(static_cast<std::size_t>(n_agents), Vec(static_cast<std::size_t>(dim), 0.0));
}

Vec project_ball(Vec v, double radius) {
  const double n = norm2(v);
  if (n > radius) scale(v, radius / n);
  return v;
}

Vec learner_step(const LearnerState& state, int agent, const Vec& g_prev) {
  const Vec& half = state.delta_half[static_cast<std::size_t>(agent)];
  Vec step(half);
  axpy(-state.eta, g_prev, step);
  return project_ball(std::move(step), state.domain_radius);
}

void learner_mix(LearnerState& state, const CommMatrix& m, const std::vector<Vec>& deltas) {
  gossip_into(m, deltas, state.delta_half);
}

void restart(LearnerState& state) {
  for (Vec& v : state.delta_half) std::fill(v.begin(), v.end(), 0.0);
}

}  // namespace medol
