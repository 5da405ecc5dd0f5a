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

#include <benchmark/benchmark.h>

#include "medol/dataio.hpp"
#include "medol/evaluation.hpp"
#include "medol/medol.hpp"
#include "medol/objectives.hpp"
#include "medol/smoothing.hpp"
#include "medol/topology.hpp"

using namespace medol;

namespace {

ObjectiveSuite bench_suite(int n, int dim) {
  SyntheticSpec spec;
  spec.samples = 2000;
  spec.dim = dim;
  spec.seed = 1;
  static Dataset data;  // shared across benchmark repetitions
  data = normalize(make_synthetic(spec));
  return make_svm_suite(data, make_partition(data, n, 1), 1e-5 / n, 2.0);
}

void BM_RingConstruction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ring_matrix(n, 7));
  }
}
BENCHMARK(BM_RingConstruction)->Arg(20)->Arg(100);

void BM_Gossip(benchmark::State& state) {
  const int n = 20;
  const int d = static_cast<int>(state.range(0));
  const CommMatrix ring = ring_matrix(n, 7);
  Rng rng(3);
  std::vector<Vec> in(n), out(n);
  for (Vec& v : in) v = rng.gaussian_vec(d);
  for (auto _ : state) {
    gossip_into(ring, in, out);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_Gossip)->Arg(22)->Arg(512);

void BM_ZeroOrderGradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto l1 = l1_norm_objective(d, 1.0);
  Rng rng(5);
  const Vec x(static_cast<std::size_t>(d), 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(zero_order_gradient(*l1, x, 0.1, 0, rng).g);
  }
}
BENCHMARK(BM_ZeroOrderGradient)->Arg(22)->Arg(512);

void BM_MedolEpoch(benchmark::State& state) {
  const ObjectiveSuite suite = bench_suite(20, 22);
  const CommMatrix ring = ring_matrix(20, 7);
  RunConfig cfg;
  cfg.K = 1;
  cfg.T = static_cast<std::uint64_t>(state.range(0));
  cfg.D = 1e-3;
  cfg.eta = 1e-5;
  cfg.n = 20;
  cfg.d = 22;
  cfg.trace_every = cfg.T;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_medol(cfg, suite, ring));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.T) * 20);
}
BENCHMARK(BM_MedolEpoch)->Arg(50)->Arg(200);

void BM_MinNormPoint(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Rng rng(7);
  std::vector<Vec> points;
  for (int i = 0; i < k; ++i) points.push_back(rng.gaussian_vec(22));
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_norm_point(points));
  }
}
BENCHMARK(BM_MinNormPoint)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
