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

#include "medol/smoothing.hpp"

#include <cmath>
#include <stdexcept>

#include "medol/parallel.hpp"

namespace medol {

Vec sample_unit_ball(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("sample_unit_ball: d must be positive");
  Vec v = rng.gaussian_vec(d);
  const double n = norm2(v);
  const double radius = std::pow(rng.uniform01(), 1.0 / static_cast<double>(d));
  if (n == 0.0) return Vec(static_cast<std::size_t>(d), 0.0);
  scale(v, radius / n);
  return v;
}

Vec sample_unit_sphere(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("sample_unit_sphere: d must be positive");
  for (;;) {
    Vec v = rng.gaussian_vec(d);
    const double n = norm2(v);
    if (n > 0.0) {
      scale(v, 1.0 / n);
      return v;
    }
  }
}

GradientSample first_order_gradient(const LocalObjective& f, const Vec& x, double delta_prime,
                                    std::uint64_t xi, Rng& rng) {
  if (delta_prime < 0) throw std::invalid_argument("first_order_gradient: delta_prime < 0");
  GradientSample out;
  out.kind = OracleKind::kFirst;
  out.delta_prime = delta_prime;
  out.xi = xi;
  if (delta_prime == 0.0) {
    out.g = f.subgradient(x, xi);
    return out;
  }
  Vec point = sample_unit_ball(f.dim(), rng);
  scale(point, delta_prime);
  axpy(1.0, x, point);
  out.g = f.subgradient(point, xi);
  return out;
}

GradientSample zero_order_gradient(const LocalObjective& f, const Vec& x, double delta_prime,
                                   std::uint64_t xi, Rng& rng) {
  if (!(delta_prime > 0))
    throw std::invalid_argument("zero_order_gradient: delta_prime must be positive");
  const int d = f.dim();
  Vec z = sample_unit_sphere(d, rng);

  Vec plus(x);
  axpy(delta_prime, z, plus);
  Vec minus(x);
  axpy(-delta_prime, z, minus);
  // Same xi for both evaluations.
  const double diff = f.value(plus, xi) - f.value(minus, xi);
  const double coeff = static_cast<double>(d) / (2.0 * delta_prime) * diff;

  GradientSample out;
  out.kind = OracleKind::kZero;
  out.delta_prime = delta_prime;
  out.xi = xi;
  out.g = std::move(z);
  scale(out.g, coeff);
  return out;
}

namespace {

constexpr std::uint64_t kChunk = 4096;

// Chunked Monte-Carlo accumulation over d-dimensional draws. Each chunk
// gets an independent stream seeded serially from the caller's rng, and
// partial moments are reduced in chunk order, so the result is the same
// for every worker count.
struct Moments {
  Vec sum, sum_sq;
};

Moments chunked_mc(int d, std::uint64_t samples, Rng& rng,
                   const std::function<void(Vec&, Rng&)>& draw) {
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> seeds(chunks);
  for (auto& s : seeds) s = rng.next();

  std::vector<Moments> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    Rng stream(seeds[c]);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(samples, begin + kChunk);
    Moments& m = partial[c];
    m.sum.assign(static_cast<std::size_t>(d), 0.0);
    m.sum_sq.assign(static_cast<std::size_t>(d), 0.0);
    Vec g(static_cast<std::size_t>(d));
    for (std::uint64_t s = begin; s < end; ++s) {
      draw(g, stream);
      for (std::size_t j = 0; j < g.size(); ++j) {
        m.sum[j] += g[j];
        m.sum_sq[j] += g[j] * g[j];
      }
    }
  });

  Moments total;
  total.sum.assign(static_cast<std::size_t>(d), 0.0);
  total.sum_sq.assign(static_cast<std::size_t>(d), 0.0);
  for (const Moments& m : partial) {
    for (std::size_t j = 0; j < total.sum.size(); ++j) {
      total.sum[j] += m.sum[j];
      total.sum_sq[j] += m.sum_sq[j];
    }
  }
  return total;
}

McVector to_mc_vector(const Moments& m, std::uint64_t samples) {
  McVector out;
  out.samples = samples;
  const double n = static_cast<double>(samples);
  out.estimate.resize(m.sum.size());
  double var_total = 0.0;
  for (std::size_t j = 0; j < m.sum.size(); ++j) {
    const double mean = m.sum[j] / n;
    out.estimate[j] = mean;
    if (samples > 1)
      var_total += std::max(0.0, (m.sum_sq[j] - n * mean * mean) / (n - 1.0));
  }
  out.std_error = samples > 1 ? std::sqrt(var_total / n) : 0.0;
  return out;
}

void one_estimate(const LocalObjective& f, const Vec& x, double delta, OracleKind mode,
                  Rng& rng, Vec& out) {
  const std::uint64_t xi = rng.index(f.sample_count());
  if (mode == OracleKind::kZero) {
    out = zero_order_gradient(f, x, delta, xi, rng).g;
  } else {
    out = first_order_gradient(f, x, delta, xi, rng).g;
  }
}

}  // namespace

McScalar smoothed_value_mc(const std::function<double(const Vec&)>& f, const Vec& x,
                           double delta, std::uint64_t samples, Rng& rng) {
  if (samples < 1) throw std::invalid_argument("smoothed_value_mc: samples must be >= 1");
  if (delta == 0.0) return {f(x), 0.0, samples};

  const int d = static_cast<int>(x.size());
  const Moments m = chunked_mc(1, samples, rng, [&](Vec& out, Rng& stream) {
    Vec point = sample_unit_ball(d, stream);
    scale(point, delta);
    axpy(1.0, x, point);
    out[0] = f(point);
  });
  const McVector v = to_mc_vector(m, samples);
  return {v.estimate[0], v.std_error, samples};
}

McVector smoothed_gradient_mc(const LocalObjective& f, const Vec& x, double delta,
                              std::uint64_t samples, Rng& rng, OracleKind mode) {
  if (samples < 1) throw std::invalid_argument("smoothed_gradient_mc: samples must be >= 1");
  if (mode == OracleKind::kZero && !(delta > 0))
    throw std::invalid_argument("smoothed_gradient_mc: zero-order needs delta > 0");
  const Moments m = chunked_mc(f.dim(), samples, rng, [&](Vec& g, Rng& stream) {
    one_estimate(f, x, delta, mode, stream, g);
  });
  return to_mc_vector(m, samples);
}

McVector smoothed_gradient_mc(const ObjectiveSuite& suite, const Vec& x, double delta,
                              std::uint64_t samples, Rng& rng, OracleKind mode) {
  if (samples < 1) throw std::invalid_argument("smoothed_gradient_mc: samples must be >= 1");
  if (mode == OracleKind::kZero && !(delta > 0))
    throw std::invalid_argument("smoothed_gradient_mc: zero-order needs delta > 0");
  const int n = suite.agents();
  const Moments m = chunked_mc(suite.dim(), samples, rng, [&](Vec& g, Rng& stream) {
    std::fill(g.begin(), g.end(), 0.0);
    Vec scratch;
    for (int i = 0; i < n; ++i) {
      one_estimate(suite.local(i), x, delta, mode, stream, scratch);
      axpy(1.0 / static_cast<double>(n), scratch, g);
    }
  });
  return to_mc_vector(m, samples);
}

}  // namespace medol
