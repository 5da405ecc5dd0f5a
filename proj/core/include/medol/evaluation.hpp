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

#ifndef MEDOL_EVALUATION_HPP
#define MEDOL_EVALUATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "medol/objectives.hpp"
#include "medol/rng.hpp"
#include "medol/smoothing.hpp"
#include "medol/trace.hpp"
#include "medol/vec.hpp"

namespace medol {

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Stationarity metrics at one point. grad_norm is the exact full-batch
/// gradient norm; smoothed_grad_norm estimates the smoothed gradient's
/// norm at radius a*delta (an upper-bound proxy for the Goldstein
/// delta-norm); goldstein_estimate is the min-norm point of a sampled
/// subgradient hull, a sampled upper bound that tightens with more
/// samples.
struct StationarityReport {
  double grad_norm = 0.0;
  McEstimate smoothed_grad_norm;
  double goldstein_estimate = 0.0;
  double delta = 0.0;
  std::uint64_t samples_used = 0;
};

/// Exact norm of the full-batch global subgradient; deterministic.
double full_gradient_norm(const ObjectiveSuite& suite, const Vec& x);

/// Norm of the Monte-Carlo smoothed gradient at radius a*delta (default
/// a = 1/2, as in the nonsmooth schedules). Requires delta > 0 and at
/// least 100 samples.
McEstimate goldstein_proxy(const ObjectiveSuite& suite, const Vec& x, double delta,
                           std::uint64_t samples, Rng& rng, OracleKind mode,
                           double a = 0.5);

/// Minimum-norm point of the convex hull of a finite point set, by
/// projected gradient over the weight simplex with a Frank-Wolfe
/// duality-gap stop (default 1e-8).
Vec min_norm_point(const std::vector<Vec>& points, double gap_tol = 1e-8);

/// Samples k points uniformly in B(x, delta), collects full global
/// subgradients, and returns the norm of the min-norm point of their
/// hull.
double goldstein_min_norm(const ObjectiveSuite& suite, const Vec& x, double delta,
                          int k_samples, Rng& rng);

struct EvalConfig {
  double delta = 0.1;
  std::uint64_t proxy_samples = 1000;
  int hull_samples = 64;
  std::uint64_t seed = 0;
  OracleKind mode = OracleKind::kFirst;
  double a = 0.5;
};

/// Per-candidate reports plus their plain mean; the mean proxy over
/// candidates realizes the expectation over a uniform epoch index that
/// the convergence statements bound.
struct EvalSummary {
  std::vector<StationarityReport> per_candidate;
  StationarityReport mean;
};

EvalSummary evaluate_run(const RunResult& result, const ObjectiveSuite& suite,
                         const EvalConfig& cfg);

/// JSON with fixed key order and 17-significant-digit floats.
std::string to_json(const EvalSummary& summary);

}  // namespace medol

#endif  // MEDOL_EVALUATION_HPP
