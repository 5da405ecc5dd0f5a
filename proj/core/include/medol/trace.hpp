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

#ifndef MEDOL_TRACE_HPP
#define MEDOL_TRACE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "medol/vec.hpp"

namespace medol {

/// One logged round. Within-epoch rows carry disagreement only; rows at
/// epoch boundaries (and every baseline row) also carry the metric
/// snapshots. Shared by every solver so traces compare column-for-column.
struct TraceRecord {
  int epoch = 0;
  std::uint64_t round = 0;  // global round index, 1-based
  double disagreement_max = 0.0;
  std::optional<double> grad_norm;
  std::optional<double> proxy_norm;
  std::optional<double> test_acc;
  std::uint64_t oracle_calls = 0;
};

struct EpochStats {
  double diameter_max = 0.0;  // max_{t,i} ||w_{t,i} - candidate||
  double grad_norm = 0.0;     // full gradient norm at the epoch candidate
};

struct RunResult {
  std::vector<Vec> candidates;  // per-epoch averages
  Vec output;
  int output_index = 0;
  std::vector<TraceRecord> trace;
  std::vector<EpochStats> epochs;  // empty unless diameter tracking is on
  std::uint64_t oracle_calls = 0;
  std::uint64_t function_evals = 0;

  // Disagreement accounting against the D*sqrt(n)/(1-rho) bound,
  // checked on every round regardless of trace cadence.
  double consensus_bound = 0.0;
  double max_disagreement = 0.0;
  std::uint64_t consensus_violations = 0;
};

}  // namespace medol

#endif  // MEDOL_TRACE_HPP
