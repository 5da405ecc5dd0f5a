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

#ifndef MEDOL_RNG_HPP
#define MEDOL_RNG_HPP

#include <array>
#include <cstdint>
#include <span>

#include "medol/vec.hpp"

namespace medol {

/// xoshiro256++ stream with splitmix64 seeding.
///
/// Hand-rolled so that draws are bit-identical across platforms and
/// standard libraries; std::<random> distributions are not portable.
/// Independent streams are derived from a (root seed, stream id) pair,
/// which is how per-agent / per-purpose streams stay decoupled under
/// any thread schedule.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Derives an independent stream from a root seed and a stream id.
  static Rng stream(std::uint64_t root, std::uint64_t stream_id);

  std::uint64_t next();

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform01();

  double uniform(double lo, double hi);

  /// Unbiased uniform integer in [0, n), n >= 1. Rejection sampled.
  std::uint64_t index(std::uint64_t n);

  /// Standard normal draw (Box-Muller; second value cached).
  double gaussian();

  void fill_gaussian(std::span<double> out);

  Vec gaussian_vec(int d);

 private:
  std::array<std::uint64_t, 4> state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Purposes for per-agent streams; keeping them separate makes every
/// random quantity a deterministic function of (root seed, agent, purpose,
/// draw counter) regardless of execution interleaving.
enum class StreamPurpose : std::uint64_t {
  kSampleIndex = 0,  // xi draws
  kSegment = 1,      // s ~ unif[0,1] draws
  kSmoothing = 2,    // z draws for the gradient estimators
  kRun = 3,          // run-level draws (final candidate pick)
};

inline Rng agent_stream(std::uint64_t root, std::uint64_t agent, StreamPurpose purpose) {
  return Rng::stream(root, agent * 8 + static_cast<std::uint64_t>(purpose));
}

}  // namespace medol

#endif  // MEDOL_RNG_HPP
