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

#ifndef MEDOL_SMOOTHING_HPP
#define MEDOL_SMOOTHING_HPP

#include <cstdint>
#include <functional>

#include "medol/objectives.hpp"
#include "medol/rng.hpp"
#include "medol/vec.hpp"

namespace medol {

enum class OracleKind { kFirst, kZero };

struct GradientSample {
  Vec g;
  OracleKind kind = OracleKind::kFirst;
  double delta_prime = 0.0;
  std::uint64_t xi = 0;
};

/// Uniform draw from the unit ball B(0,1): Gaussian direction scaled by
/// a U^(1/d) radius. Always has norm <= 1.
Vec sample_unit_ball(int d, Rng& rng);

/// Uniform draw from the unit sphere S^(d-1): normalized Gaussian.
Vec sample_unit_sphere(int d, Rng& rng);

/// Stochastic subgradient at a point perturbed uniformly within the
/// delta_prime-ball: g = subgradient(x + delta_prime * z, xi). With
/// delta_prime = 0 this is the plain stochastic subgradient (no draw).
GradientSample first_order_gradient(const LocalObjective& f, const Vec& x, double delta_prime,
                                    std::uint64_t xi, Rng& rng);

/// Two-point sphere estimator
///   g = d/(2 delta_prime) * (F(x + delta_prime z, xi) - F(x - delta_prime z, xi)) * z,
/// with both evaluations sharing the same xi. Requires delta_prime > 0.
/// Its conditional mean is the gradient of the ball-smoothed objective.
GradientSample zero_order_gradient(const LocalObjective& f, const Vec& x, double delta_prime,
                                   std::uint64_t xi, Rng& rng);

struct McScalar {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

struct McVector {
  Vec estimate;
  double std_error = 0.0;  // sqrt(sum_j Var(g_j) / samples)
  std::uint64_t samples = 0;
};

/// Monte-Carlo estimate of the smoothed value f_delta(x) = E[f(x + delta u)],
/// u uniform on the unit ball. delta = 0 returns f(x) exactly.
McScalar smoothed_value_mc(const std::function<double(const Vec&)>& f, const Vec& x,
                           double delta, std::uint64_t samples, Rng& rng);

/// Monte-Carlo estimate of the smoothed gradient of one local objective,
/// averaging mode-appropriate estimator draws with a fresh xi each.
/// Evaluation-only; never used inside the solver loop.
McVector smoothed_gradient_mc(const LocalObjective& f, const Vec& x, double delta,
                              std::uint64_t samples, Rng& rng, OracleKind mode);

/// Same for the global objective: each draw averages per-agent
/// estimators with independent perturbations and sample indices.
McVector smoothed_gradient_mc(const ObjectiveSuite& suite, const Vec& x, double delta,
                              std::uint64_t samples, Rng& rng, OracleKind mode);

}  // namespace medol

#endif  // MEDOL_SMOOTHING_HPP
