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

#include <cmath>

#include "medol/evaluation.hpp"
#include "support/fixtures.hpp"

using namespace medol;

TEST_CASE("full gradient norm") {
  const auto quad = noisy_quadratic(2, {1.0, 1.0}, 0.0, 0);
  CHECK(full_gradient_norm(testing::single_suite(quad), {1.0, 1.0}) == 0.0);

  const auto l1 = l1_norm_objective(1, 1.0);
  CHECK(full_gradient_norm(testing::single_suite(l1), {2.0}) == doctest::Approx(1.0));

  std::vector<Sample> shard(1);
  shard[0].label = 1;
  shard[0].features = {{1, 1.0}};
  const auto svm = capped_l1_svm(shard, 2, 0.1, 1.0);
  CHECK(full_gradient_norm(testing::single_suite(svm), {0.5, 0.0}) == doctest::Approx(0.9));
}

TEST_CASE("goldstein proxy") {
  Rng rng(3);
  const auto l1 = l1_norm_objective(1, 1.0);
  const ObjectiveSuite suite = testing::single_suite(l1);

  SUBCASE("|x| at the kink is near-stationary") {
    const McEstimate proxy = goldstein_proxy(suite, {0.0}, 0.5, 40000, rng, OracleKind::kFirst);
    CHECK(proxy.estimate <= 3.0 * proxy.std_error);
  }
  SUBCASE("|x| away from the kink reports slope one") {
    const McEstimate proxy = goldstein_proxy(suite, {2.0}, 1.0, 40000, rng, OracleKind::kFirst);
    CHECK(std::abs(proxy.estimate - 1.0) <= 3.0 * proxy.std_error + 1e-12);
  }
  SUBCASE("quadratic one step from the optimum reports the gradient") {
    const auto quad = noisy_quadratic(2, {0.0, 0.0}, 0.0, 0);
    const ObjectiveSuite qsuite = testing::single_suite(quad);
    const McEstimate proxy = goldstein_proxy(qsuite, {1.0, 0.0}, 1e-3, 5000, rng,
                                             OracleKind::kFirst);
    CHECK(proxy.estimate == doctest::Approx(1.0).epsilon(1e-2));
  }
  SUBCASE("parameter guards") {
    CHECK_THROWS_AS(goldstein_proxy(suite, {0.0}, 0.0, 1000, rng, OracleKind::kFirst),
                    std::invalid_argument);
    CHECK_THROWS_AS(goldstein_proxy(suite, {0.0}, 0.5, 99, rng, OracleKind::kFirst),
                    std::invalid_argument);
  }
}

TEST_CASE("min-norm point matches a dense grid search on small hulls") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + static_cast<int>(rng.index(2));  // 2 or 3 points
    const int d = 1 + static_cast<int>(rng.index(3));
    std::vector<Vec> points;
    for (int i = 0; i < k; ++i) points.push_back(rng.gaussian_vec(d));

    const double solver = norm2(min_norm_point(points));

    // Grid over convex weights with step 1e-3 (2-point hulls) or 1e-2
    // (3-point hulls; still ~5k evaluations).
    double grid_best = 1e300;
    if (k == 2) {
      for (int a = 0; a <= 1000; ++a) {
        const double w0 = a / 1000.0;
        Vec p = scaled(points[0], w0);
        axpy(1.0 - w0, points[1], p);
        grid_best = std::min(grid_best, norm2(p));
      }
      CHECK(solver <= grid_best + 1e-3);
      CHECK(solver >= grid_best - 1e-3);
    } else {
      for (int a = 0; a <= 100; ++a)
        for (int b = 0; b <= 100 - a; ++b) {
          const double w0 = a / 100.0, w1 = b / 100.0;
          Vec p = scaled(points[0], w0);
          axpy(w1, points[1], p);
          axpy(1.0 - w0 - w1, points[2], p);
          grid_best = std::min(grid_best, norm2(p));
        }
      CHECK(solver <= grid_best + 1e-3);
      // coarser grid can only overestimate the optimum
      CHECK(solver >= grid_best - 1e-2);
    }
  }
}

TEST_CASE("min-norm point is non-increasing in the sample prefix") {
  // The 1e-8 duality-gap stop bounds the squared norm, so values near
  // zero are only accurate to ~1e-4 in the norm itself.
  Rng rng(9);
  std::vector<Vec> points;
  double previous = 1e300;
  for (int k = 1; k <= 24; ++k) {
    points.push_back(rng.gaussian_vec(4));
    const double value = norm2(min_norm_point(points));
    CHECK(value <= previous + 1e-4);
    previous = value;
  }
}

TEST_CASE("goldstein min-norm estimate") {
  Rng rng(11);
  const auto l1 = l1_norm_objective(1, 1.0);
  const ObjectiveSuite suite = testing::single_suite(l1);

  SUBCASE("samples straddling the kink cancel to zero") {
    CHECK(goldstein_min_norm(suite, {0.0}, 1.0, 64, rng) < 1e-6);
  }
  SUBCASE("away from the kink the hull is a single slope") {
    CHECK(goldstein_min_norm(suite, {2.0}, 1.0, 16, rng) == doctest::Approx(1.0));
  }
  SUBCASE("k = 1 degenerates to a single subgradient norm") {
    CHECK(goldstein_min_norm(suite, {2.0}, 0.5, 1, rng) == doctest::Approx(1.0));
  }
}

TEST_CASE("stationarity gap: flat-bottomed objectives vs raw gradients") {
  // |x| at 0.5 has |grad| = 1 everywhere nearby, yet x = 0 is
  // (delta, ~0)-stationary; the two metrics must disagree exactly there.
  Rng rng(13);
  const auto l1 = l1_norm_objective(1, 1.0);
  const ObjectiveSuite suite = testing::single_suite(l1);
  CHECK(full_gradient_norm(suite, {0.5}) == doctest::Approx(1.0));
  CHECK(goldstein_min_norm(suite, {0.0}, 0.5, 64, rng) < 0.05);
  const McEstimate proxy = goldstein_proxy(suite, {0.0}, 0.5, 20000, rng, OracleKind::kFirst);
  CHECK(proxy.estimate <= 3.0 * proxy.std_error);
}

TEST_CASE("evaluate_run") {
  const auto quad = noisy_quadratic(2, {0.25, -0.25}, 0.0, 0);
  const ObjectiveSuite suite = testing::single_suite(quad);

  EvalConfig cfg;
  cfg.delta = 0.05;
  cfg.proxy_samples = 2000;
  cfg.hull_samples = 8;
  cfg.seed = 5;

  SUBCASE("single candidate summarizes to itself") {
    RunResult result;
    result.candidates = {Vec{1.0, 0.0}};
    const EvalSummary summary = evaluate_run(result, suite, cfg);
    REQUIRE(summary.per_candidate.size() == 1);
    CHECK(summary.mean.grad_norm == summary.per_candidate[0].grad_norm);
    CHECK(summary.mean.goldstein_estimate == summary.per_candidate[0].goldstein_estimate);
  }
  SUBCASE("identical candidates give identical reports") {
    RunResult result;
    result.candidates = {Vec{0.5, 0.5}, Vec{0.5, 0.5}, Vec{0.5, 0.5}};
    const EvalSummary summary = evaluate_run(result, suite, cfg);
    for (const auto& report : summary.per_candidate)
      CHECK(report.grad_norm == summary.per_candidate[0].grad_norm);
  }
  SUBCASE("a solved run reports stationarity at the noise floor") {
    RunResult result;
    result.candidates = {Vec{0.25, -0.25}};
    const EvalSummary summary = evaluate_run(result, suite, cfg);
    CHECK(summary.mean.grad_norm == 0.0);
    CHECK(summary.mean.smoothed_grad_norm.estimate <=
          3.0 * summary.mean.smoothed_grad_norm.std_error + 1e-12);
  }
  SUBCASE("hull estimate is bounded by the proxy band") {
    RunResult result;
    result.candidates = {Vec{0.7, 0.1}, Vec{0.3, -0.4}};
    const EvalSummary summary = evaluate_run(result, suite, cfg);
    for (const auto& report : summary.per_candidate)
      CHECK(report.goldstein_estimate <=
            report.smoothed_grad_norm.estimate + 3.0 * report.smoothed_grad_norm.std_error);
  }
  SUBCASE("no candidates is an error") {
    RunResult result;
    CHECK_THROWS_AS(evaluate_run(result, suite, cfg), std::invalid_argument);
  }
}

TEST_CASE("report JSON has a fixed key order") {
  EvalSummary summary;
  StationarityReport r;
  r.grad_norm = 1.5;
  r.smoothed_grad_norm = {1.25, 0.01};
  r.goldstein_estimate = 1.0;
  r.delta = 0.1;
  r.samples_used = 100;
  summary.per_candidate = {r};
  summary.mean = r;

  const std::string json = to_json(summary);
  CHECK(json == to_json(summary));
  const auto pos_mean = json.find("\"mean\"");
  const auto pos_grad = json.find("\"grad_norm\"");
  const auto pos_smoothed = json.find("\"smoothed_grad_norm\"");
  const auto pos_gold = json.find("\"goldstein_estimate\"");
  const auto pos_list = json.find("\"per_candidate\"");
  CHECK(pos_mean < pos_grad);
  CHECK(pos_grad < pos_smoothed);
  CHECK(pos_smoothed < pos_gold);
  CHECK(pos_gold < pos_list);
}
