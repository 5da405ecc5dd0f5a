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

#ifndef MEDOL_PARALLEL_HPP
#define MEDOL_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace medol {

/// Worker count used by parallel_for. Initialized once from the
/// MEDOL_WORKERS environment variable (default 1).
int worker_count();

void set_worker_count(int workers);

/// Runs body(i) for i in [0, count). Each index must write only to its
/// own output slots; reductions happen after the call, in index order,
/// so results never depend on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace medol

#endif  // MEDOL_PARALLEL_HPP
