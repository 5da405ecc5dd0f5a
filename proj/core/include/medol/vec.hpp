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

#ifndef MEDOL_VEC_HPP
#define MEDOL_VEC_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace medol {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2_sq(std::span<const double> a) { return dot(a, a); }

inline double norm2(std::span<const double> a) { return std::sqrt(norm2_sq(a)); }

// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(std::span<double> a, double alpha) {
  for (double& v : a) v *= alpha;
}

inline Vec scaled(const Vec& a, double alpha) {
  Vec out(a);
  scale(out, alpha);
  return out;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec out(a);
  axpy(1.0, b, out);
  return out;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec out(a);
  axpy(-1.0, b, out);
  return out;
}

inline double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline bool all_finite(std::span<const double> a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

// Mean over a set of equally sized vectors, summed in index order.
inline Vec mean_of(const std::vector<Vec>& vs) {
  Vec out(vs.empty() ? 0 : vs.front().size(), 0.0);
  for (const Vec& v : vs) axpy(1.0, v, out);
  if (!vs.empty()) scale(out, 1.0 / static_cast<double>(vs.size()));
  return out;
}

}  // namespace medol

#endif  // MEDOL_VEC_HPP
