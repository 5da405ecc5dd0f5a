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

#include "medol/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace medol {

double full_gradient_norm(const ObjectiveSuite& suite, const Vec& x) {
  return norm2(suite.global_subgradient(x));
}

McEstimate goldstein_proxy(const ObjectiveSuite& suite, const Vec& x, double delta,
                           std::uint64_t samples, Rng& rng, OracleKind mode, double a) {
  if (!(delta > 0)) throw std::invalid_argument("goldstein_proxy: delta must be positive");
  if (samples < 100) throw std::invalid_argument("goldstein_proxy: need at least 100 samples");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("goldstein_proxy: a must be in (0,1)");
  const McVector mc = smoothed_gradient_mc(suite, x, a * delta, samples, rng, mode);
  return {norm2(mc.estimate), mc.std_error};
}

namespace {

// Euclidean projection onto the probability simplex (sort-based).
void project_simplex(Vec& w) {
  Vec sorted(w);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0;
  double threshold = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) threshold = candidate;
  }
  for (double& v : w) v = std::max(0.0, v - threshold);
}

}  // namespace

Vec min_norm_point(const std::vector<Vec>& points, double gap_tol) {
  if (points.empty()) throw std::invalid_argument("min_norm_point: empty point set");
  const std::size_t k = points.size();
  const std::size_t d = points.front().size();
  for (const Vec& p : points)
    if (p.size() != d) throw std::invalid_argument("min_norm_point: dimension mismatch");
  if (k == 1) return points.front();

  // Gram matrix of the points; the objective is w^T Q w over the simplex.
  std::vector<double> gram(k * k);
  double diag_max = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double q = dot(points[i], points[j]);
      gram[i * k + j] = q;
      gram[j * k + i] = q;
    }
    diag_max = std::max(diag_max, gram[i * k + i]);
  }

  Vec w(k, 1.0 / static_cast<double>(k));
  Vec grad(k);
  // Step from the quadratic's curvature bound; trace(Q) bounds the top
  // eigenvalue.
  double trace = 0.0;
  for (std::size_t i = 0; i < k; ++i) trace += gram[i * k + i];
  const double step = trace > 0 ? 1.0 / (2.0 * trace) : 1.0;
  const double scale_ref = std::max(diag_max, 1.0);

  for (int iter = 0; iter < 200000; ++iter) {
    for (std::size_t i = 0; i < k; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j) s += gram[i * k + j] * w[j];
      grad[i] = 2.0 * s;
    }
    // Frank-Wolfe gap: <grad, w> - min_i grad_i bounds the suboptimality.
    double gmin = grad[0];
    for (double gv : grad) gmin = std::min(gmin, gv);
    const double gap = dot(grad, w) - gmin;
    if (gap <= gap_tol * scale_ref) break;

    for (std::size_t i = 0; i < k; ++i) w[i] -= step * grad[i];
    project_simplex(w);
  }

  Vec out(d, 0.0);
  for (std::size_t i = 0; i < k; ++i) axpy(w[i], points[i], out);
  return out;
}

double goldstein_min_norm(const ObjectiveSuite& suite, const Vec& x, double delta,
                          int k_samples, Rng& rng) {
  if (k_samples < 1) throw std::invalid_argument("goldstein_min_norm: need k >= 1");
  if (!(delta > 0)) throw std::invalid_argument("goldstein_min_norm: delta must be positive");
  std::vector<Vec> grads;
  grads.reserve(static_cast<std::size_t>(k_samples));
  for (int s = 0; s < k_samples; ++s) {
    Vec point = sample_unit_ball(suite.dim(), rng);
    scale(point, delta);
    axpy(1.0, x, point);
    grads.push_back(suite.global_subgradient(point));
  }
  return norm2(min_norm_point(grads));
}

EvalSummary evaluate_run(const RunResult& result, const ObjectiveSuite& suite,
                         const EvalConfig& cfg) {
  if (result.candidates.empty())
    throw std::invalid_argument("evaluate_run: result has no candidates");

  EvalSummary summary;
  summary.per_candidate.reserve(result.candidates.size());
  Rng rng(cfg.seed);
  for (const Vec& candidate : result.candidates) {
    StationarityReport report;
    report.delta = cfg.delta;
    report.samples_used = cfg.proxy_samples;
    report.grad_norm = full_gradient_norm(suite, candidate);
    const McEstimate proxy =
        goldstein_proxy(suite, candidate, cfg.delta, cfg.proxy_samples, rng, cfg.mode, cfg.a);
    report.smoothed_grad_norm = proxy;
    report.goldstein_estimate =
        goldstein_min_norm(suite, candidate, cfg.delta, cfg.hull_samples, rng);
    summary.per_candidate.push_back(report);
  }

  StationarityReport& mean = summary.mean;
  mean.delta = cfg.delta;
  mean.samples_used = cfg.proxy_samples;
  const double inv = 1.0 / static_cast<double>(summary.per_candidate.size());
  for (const StationarityReport& r : summary.per_candidate) {
    mean.grad_norm += inv * r.grad_norm;
    mean.smoothed_grad_norm.estimate += inv * r.smoothed_grad_norm.estimate;
    mean.smoothed_grad_norm.std_error += inv * r.smoothed_grad_norm.std_error;
    mean.goldstein_estimate += inv * r.goldstein_estimate;
  }
  return summary;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_report(std::string& out, const StationarityReport& r, const char* indent) {
  out += indent;
  out += "{\"grad_norm\": " + fmt(r.grad_norm);
  out += ", \"smoothed_grad_norm\": " + fmt(r.smoothed_grad_norm.estimate);
  out += ", \"smoothed_grad_norm_stderr\": " + fmt(r.smoothed_grad_norm.std_error);
  out += ", \"goldstein_estimate\": " + fmt(r.goldstein_estimate);
  out += ", \"delta\": " + fmt(r.delta);
  out += ", \"samples_used\": " + std::to_string(r.samples_used);
  out += "}";
}

}  // namespace

std::string to_json(const EvalSummary& summary) {
  std::string out = "{\n  \"mean\":\n";
  append_report(out, summary.mean, "    ");
  out += ",\n  \"per_candidate\": [\n";
  for (std::size_t i = 0; i < summary.per_candidate.size(); ++i) {
    append_report(out, summary.per_candidate[i], "    ");
    if (i + 1 < summary.per_candidate.size()) out += ",";
    out += "\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace medol
