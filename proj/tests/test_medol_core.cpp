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

#include "medol/medol.hpp"
#include "medol/parallel.hpp"
#include "support/fixtures.hpp"

using namespace medol;

namespace {

double scripted_s(int epoch, std::uint64_t t, int agent) {
  return 0.1 + 0.16 * static_cast<double>((epoch * 7 + static_cast<int>(t) * 3 + agent) % 5);
}

bool same_records(const std::vector<TraceRecord>& a, const std::vector<TraceRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].epoch != b[i].epoch || a[i].round != b[i].round) return false;
    if (a[i].disagreement_max != b[i].disagreement_max) return false;
    if (a[i].grad_norm != b[i].grad_norm) return false;
    if (a[i].oracle_calls != b[i].oracle_calls) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("quadratic already at the optimum is a fixed point") {
  const auto quad = noisy_quadratic(2, {0.0, 0.0}, 0.0, 0);
  const ObjectiveSuite suite = testing::replicated_suite(quad, 4);
  RunConfig cfg;
  cfg.K = 3;
  cfg.T = 5;
  cfg.D = 0.5;
  cfg.eta = 0.1;
  cfg.n = 4;
  cfg.d = 2;
  const RunResult result = run_medol(cfg, suite, ring_matrix(4, 3));
  REQUIRE(result.candidates.size() == 3);
  for (const Vec& c : result.candidates) CHECK(norm2(c) == 0.0);
  CHECK(norm2(result.output) == 0.0);
  CHECK(result.oracle_calls == 4 * 15);
}

TEST_CASE("zero-gradient oracle keeps iterates at the start") {
  const auto stub = std::make_shared<testing::ConstantObjective>(3, 1.0);
  const ObjectiveSuite suite = testing::replicated_suite(stub, 3);
  RunConfig cfg;
  cfg.K = 2;
  cfg.T = 4;
  cfg.D = 1.0;
  cfg.eta = 0.3;
  cfg.n = 3;
  cfg.d = 3;
  cfg.y0 = {0.5, -0.25, 1.0};
  const RunResult result = run_medol(cfg, suite, ring_matrix(3, 3));
  for (const Vec& c : result.candidates) {
    CHECK(c[0] == doctest::Approx(0.5));
    CHECK(c[1] == doctest::Approx(-0.25));
    CHECK(c[2] == doctest::Approx(1.0));
  }
}

TEST_CASE("desk simulation matches the driver state for state") {
  // Two asymmetric 1-D agents: |x| and a linear slope -0.7, uniform
  // mixing, scripted segment draws, first-order oracle without
  // smoothing. The reference trajectory below transcribes the epoch
  // loop directly and was fixed before the driver existed.
  const double eta = 0.5, D = 0.3;
  const int K = 2, T = 3, n = 2;

  const auto f0 = l1_norm_objective(1, 1.0);
  const auto f1 = std::make_shared<testing::LinearObjective>(Vec{-0.7});
  const ObjectiveSuite suite = testing::suite_of({f0, f1});
  const CommMatrix P = uniform_matrix(2);

  RunConfig cfg;
  cfg.K = K;
  cfg.T = T;
  cfg.D = D;
  cfg.eta = eta;
  cfg.n = n;
  cfg.d = 1;
  cfg.y0 = {0.2};

  MedolDriver driver(cfg, suite, P);
  driver.set_segment_override(scripted_s);

  // Reference state.
  double y[2] = {0.2, 0.2};
  double half[2] = {0.0, 0.0};
  double g_prev[2] = {0.0, 0.0};
  const auto sign = [](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); };

  for (int k = 1; k <= K; ++k) {
    half[0] = half[1] = 0.0;
    g_prev[0] = g_prev[1] = 0.0;
    for (int t = 1; t <= T; ++t) {
      double delta[2], x[2], w[2], g[2], y_next[2];
      for (int i = 0; i < n; ++i) {
        delta[i] = half[i] - eta * g_prev[i];
        if (std::abs(delta[i]) > D) delta[i] = delta[i] > 0 ? D : -D;
        x[i] = y[i] + delta[i];
        w[i] = y[i] + scripted_s(k, static_cast<std::uint64_t>(t), i) * delta[i];
      }
      for (int i = 0; i < n; ++i) y_next[i] = 0.5 * x[0] + 0.5 * x[1];
      const double mixed = 0.5 * delta[0] + 0.5 * delta[1];
      g[0] = sign(w[0]);
      g[1] = -0.7;
      half[0] = half[1] = mixed;

      driver.step();
      CHECK(driver.epoch() == k);
      CHECK(driver.round_in_epoch() == static_cast<std::uint64_t>(t % T == 0 ? T : t % T));
      for (int i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        CHECK(driver.deltas()[idx][0] == doctest::Approx(delta[i]).epsilon(1e-14));
        CHECK(driver.x()[idx][0] == doctest::Approx(x[i]).epsilon(1e-14));
        CHECK(driver.w()[idx][0] == doctest::Approx(w[i]).epsilon(1e-14));
        CHECK(driver.y()[idx][0] == doctest::Approx(y_next[i]).epsilon(1e-14));
        CHECK(driver.g()[idx][0] == doctest::Approx(g[i]).epsilon(1e-14));
        y[i] = y_next[i];
        g_prev[i] = g[i];
      }
    }
  }
}

TEST_CASE("segment endpoints pin w at x or the previous iterate") {
  const auto quad = noisy_quadratic(2, {1.0, 1.0}, 0.0, 0);
  const ObjectiveSuite suite = testing::replicated_suite(quad, 3);
  RunConfig cfg;
  cfg.K = 1;
  cfg.T = 2;
  cfg.D = 0.4;
  cfg.eta = 0.2;
  cfg.n = 3;
  cfg.d = 2;
  const CommMatrix ring = ring_matrix(3, 3);

  SUBCASE("s = 1 gives w = x") {
    MedolDriver driver(cfg, suite, ring);
    driver.set_segment_override([](int, std::uint64_t, int) { return 1.0; });
    driver.step();
    driver.step();
    for (int i = 0; i < 3; ++i)
      CHECK(dist2(driver.w()[static_cast<std::size_t>(i)], driver.x()[static_cast<std::size_t>(i)]) == 0.0);
  }
  SUBCASE("s = 0 gives w = previous y") {
    MedolDriver driver(cfg, suite, ring);
    driver.set_segment_override([](int, std::uint64_t, int) { return 0.0; });
    const std::vector<Vec> y_before = driver.y();
    driver.step();
    for (int i = 0; i < 3; ++i)
      CHECK(dist2(driver.w()[static_cast<std::size_t>(i)], y_before[static_cast<std::size_t>(i)]) == 0.0);
  }
  SUBCASE("delta = 0 collapses the round to gossip") {
    const auto stub = std::make_shared<testing::ConstantObjective>(2, 0.0);
    const ObjectiveSuite stub_suite = testing::replicated_suite(stub, 3);
    MedolDriver driver(cfg, stub_suite, ring);
    const std::vector<Vec> y_before = driver.y();
    driver.step();
    for (int i = 0; i < 3; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      CHECK(dist2(driver.x()[idx], y_before[idx]) == 0.0);
      CHECK(dist2(driver.w()[idx], y_before[idx]) == 0.0);
    }
  }
}

TEST_CASE("candidate average") {
  CHECK(candidate_average({{Vec{2.0}, Vec{2.0}}, {Vec{2.0}, Vec{2.0}}}) == Vec{2.0});
  CHECK(candidate_average({{Vec{0.0}, Vec{2.0}}})[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(candidate_average({}), std::invalid_argument);

  // Permuting agents moves the summation order but stays within fp slop.
  Rng rng(5);
  std::vector<Vec> agents;
  for (int i = 0; i < 6; ++i) agents.push_back(rng.gaussian_vec(3));
  std::vector<Vec> permuted(agents.rbegin(), agents.rend());
  const Vec a = candidate_average({agents});
  const Vec b = candidate_average({permuted});
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-12));
}

TEST_CASE("mean dynamics and consensus accounting") {
  const auto quad = noisy_quadratic(3, {1.0, -2.0, 0.5}, 0.5, 77);
  const ObjectiveSuite suite = testing::replicated_suite(quad, 5);
  const CommMatrix ring = ring_matrix(5, 3);
  RunConfig cfg;
  cfg.K = 2;
  cfg.T = 15;
  cfg.D = 0.2;
  cfg.eta = 0.05;
  cfg.n = 5;
  cfg.d = 3;
  cfg.seed = 3;

  MedolDriver driver(cfg, suite, ring);
  Vec x_bar_prev = mean_of(driver.y());  // y_0 = x_0
  while (!driver.done()) {
    driver.step();
    const Vec x_bar = mean_of(driver.x());
    const Vec delta_bar = mean_of(driver.deltas());
    const Vec y_bar = mean_of(driver.y());
    for (std::size_t j = 0; j < x_bar.size(); ++j) {
      CHECK(x_bar[j] == doctest::Approx(x_bar_prev[j] + delta_bar[j]).epsilon(1e-10).scale(1.0));
      CHECK(y_bar[j] == doctest::Approx(x_bar[j]).epsilon(1e-10).scale(1.0));
    }
    for (const Vec& delta : driver.deltas()) CHECK(norm2(delta) <= cfg.D + 1e-12);
    x_bar_prev = x_bar;
  }
  const RunResult result = driver.finish();
  CHECK(result.consensus_violations == 0);
  CHECK(result.max_disagreement <= result.consensus_bound);
}

TEST_CASE("runs are deterministic for any worker count") {
  SyntheticSpec spec;
  spec.samples = 200;
  spec.dim = 8;
  spec.seed = 21;
  const Dataset ds = normalize(make_synthetic(spec));
  const Partition part = make_partition(ds, 5, 1);
  const ObjectiveSuite suite = make_svm_suite(ds, part, 1e-5 / 5, 2.0);
  const CommMatrix ring = ring_matrix(5, 3);

  RunConfig cfg;
  cfg.K = 3;
  cfg.T = 10;
  cfg.D = 0.01;
  cfg.eta = 1e-4;
  cfg.n = 5;
  cfg.d = 8;
  cfg.seed = 9;
  cfg.oracle = OracleKind::kZero;
  cfg.delta_prime = 0.05;

  set_worker_count(1);
  const RunResult serial = run_medol(cfg, suite, ring);
  const RunResult repeat = run_medol(cfg, suite, ring);
  set_worker_count(8);
  const RunResult threaded = run_medol(cfg, suite, ring);
  set_worker_count(1);

  REQUIRE(serial.candidates.size() == repeat.candidates.size());
  REQUIRE(serial.candidates.size() == threaded.candidates.size());
  for (std::size_t k = 0; k < serial.candidates.size(); ++k) {
    CHECK(serial.candidates[k] == repeat.candidates[k]);
    CHECK(serial.candidates[k] == threaded.candidates[k]);
  }
  CHECK(serial.output == threaded.output);
  CHECK(same_records(serial.trace, repeat.trace));
  CHECK(same_records(serial.trace, threaded.trace));
}

TEST_CASE("configuration and runtime guards") {
  const auto quad = noisy_quadratic(2, {0.0, 0.0}, 0.0, 0);
  const ObjectiveSuite suite = testing::replicated_suite(quad, 3);
  const CommMatrix ring = ring_matrix(3, 3);
  RunConfig cfg;
  cfg.K = 1;
  cfg.T = 1;
  cfg.D = 0.1;
  cfg.eta = 0.1;
  cfg.n = 3;
  cfg.d = 2;

  SUBCASE("shape mismatches are rejected before compute") {
    RunConfig bad = cfg;
    bad.n = 4;
    CHECK_THROWS_AS(run_medol(bad, suite, ring), std::invalid_argument);
    bad = cfg;
    bad.d = 3;
    CHECK_THROWS_AS(run_medol(bad, suite, ring), std::invalid_argument);
    bad = cfg;
    bad.oracle = OracleKind::kZero;  // delta_prime stays 0
    CHECK_THROWS_AS(run_medol(bad, suite, ring), std::invalid_argument);
    bad = cfg;
    bad.y0 = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(run_medol(bad, suite, ring), std::invalid_argument);
  }
  SUBCASE("non-finite values abort with context") {
    const auto nan_objective =
        std::make_shared<testing::LinearObjective>(Vec{std::nan(""), 0.0});
    const ObjectiveSuite nan_suite = testing::replicated_suite(nan_objective, 3);
    CHECK_THROWS_WITH_AS(run_medol(cfg, nan_suite, ring), doctest::Contains("epoch 1"),
                         std::runtime_error);
    // The abort must also propagate out of pool workers.
    set_worker_count(8);
    CHECK_THROWS_AS(run_medol(cfg, nan_suite, ring), std::runtime_error);
    set_worker_count(1);
  }
}
