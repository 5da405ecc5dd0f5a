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

#include "medol/objectives.hpp"

#include <cmath>
#include <stdexcept>

#include "medol/rng.hpp"

namespace medol {

double sparse_dot(const Sample& s, const Vec& x) {
  double acc = 0.0;
  for (const auto& [idx, val] : s.features) acc += val * x[static_cast<std::size_t>(idx - 1)];
  return acc;
}

ObjectiveSuite::ObjectiveSuite(std::vector<LocalObjectivePtr> locals)
    : locals_(std::move(locals)) {
  if (locals_.empty()) throw std::invalid_argument("ObjectiveSuite: no locals");
  dim_ = locals_.front()->dim();
  for (const auto& local : locals_) {
    if (!local) throw std::invalid_argument("ObjectiveSuite: null local");
    if (local->dim() != dim_) throw std::invalid_argument("ObjectiveSuite: dimension mismatch");
    lipschitz_ = std::max(lipschitz_, local->lipschitz_bound());
  }
}

double ObjectiveSuite::global_value(const Vec& x) const {
  double acc = 0.0;
  for (const auto& local : locals_) acc += local->full_value(x);
  return acc / static_cast<double>(locals_.size());
}

Vec ObjectiveSuite::global_subgradient(const Vec& x) const {
  Vec acc(x.size(), 0.0);
  for (const auto& local : locals_) axpy(1.0, local->full_subgradient(x), acc);
  scale(acc, 1.0 / static_cast<double>(locals_.size()));
  return acc;
}

namespace {

class CappedL1Svm final : public LocalObjective {
 public:
  CappedL1Svm(std::vector<Sample> shard, int dim, double lambda, double alpha)
      : shard_(std::move(shard)), dim_(dim), lambda_(lambda), alpha_(alpha) {
    if (shard_.empty()) throw std::invalid_argument("capped_l1_svm: empty shard");
    if (dim_ < 1) throw std::invalid_argument("capped_l1_svm: dim must be positive");
    if (lambda_ < 0) throw std::invalid_argument("capped_l1_svm: lambda must be >= 0");
    if (!(alpha_ > 0)) throw std::invalid_argument("capped_l1_svm: alpha must be > 0");
    double max_feature_norm = 0.0;
    for (const Sample& s : shard_) {
      double sq = 0.0;
      for (const auto& [idx, val] : s.features) {
        if (idx > dim_) throw std::invalid_argument("capped_l1_svm: feature index beyond dim");
        sq += val * val;
      }
      max_feature_norm = std::max(max_feature_norm, std::sqrt(sq));
    }
    lipschitz_ = max_feature_norm + lambda_ * std::sqrt(static_cast<double>(dim_));
  }

  int dim() const override { return dim_; }
  std::uint64_t sample_count() const override { return shard_.size(); }

  double value(const Vec& x, std::uint64_t xi) const override {
    check_dim(x);
    return hinge(shard_[static_cast<std::size_t>(xi)], x) + regularizer(x);
  }

  Vec subgradient(const Vec& x, std::uint64_t xi) const override {
    check_dim(x);
    Vec g = regularizer_grad(x);
    add_hinge_grad(shard_[static_cast<std::size_t>(xi)], x, 1.0, g);
    return g;
  }

  double full_value(const Vec& x) const override {
    check_dim(x);
    double acc = 0.0;
    for (const Sample& s : shard_) acc += hinge(s, x);
    // The regularizer sits outside the sample average and counts once.
    return acc / static_cast<double>(shard_.size()) + regularizer(x);
  }

  Vec full_subgradient(const Vec& x) const override {
    check_dim(x);
    Vec g = regularizer_grad(x);
    const double w = 1.0 / static_cast<double>(shard_.size());
    for (const Sample& s : shard_) add_hinge_grad(s, x, w, g);
    return g;
  }

  double lipschitz_bound() const override { return lipschitz_; }

 private:
  void check_dim(const Vec& x) const {
    if (x.size() != static_cast<std::size_t>(dim_))
      throw std::invalid_argument("capped_l1_svm: x dimension mismatch");
  }

  static double hinge(const Sample& s, const Vec& x) {
    return std::max(1.0 - s.label * sparse_dot(s, x), 0.0);
  }

  // Margin exactly 1 contributes nothing (kink convention).
  static void add_hinge_grad(const Sample& s, const Vec& x, double w, Vec& g) {
    const double margin = s.label * sparse_dot(s, x);
    if (margin >= 1.0) return;
    for (const auto& [idx, val] : s.features)
      g[static_cast<std::size_t>(idx - 1)] -= w * s.label * val;
  }

  double regularizer(const Vec& x) const {
    double acc = 0.0;
    for (double v : x) acc += std::min(std::abs(v), alpha_);
    return lambda_ * acc;
  }

  Vec regularizer_grad(const Vec& x) const {
    Vec g(x.size(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double a = std::abs(x[j]);
      if (a > 0.0 && a < alpha_) g[j] = lambda_ * (x[j] > 0 ? 1.0 : -1.0);
    }
    return g;
  }

  std::vector<Sample> shard_;
  int dim_;
  double lambda_;
  double alpha_;
  double lipschitz_ = 0.0;
};

class L1Norm final : public LocalObjective {
 public:
  L1Norm(int dim, double scale) : dim_(dim), scale_(scale) {
    if (dim_ < 1) throw std::invalid_argument("l1_norm_objective: dim must be positive");
    if (scale_ < 0) throw std::invalid_argument("l1_norm_objective: scale must be >= 0");
  }

  int dim() const override { return dim_; }
  std::uint64_t sample_count() const override { return 1; }

  double value(const Vec& x, std::uint64_t) const override { return full_value(x); }
  Vec subgradient(const Vec& x, std::uint64_t) const override { return full_subgradient(x); }

  double full_value(const Vec& x) const override {
    double acc = 0.0;
    for (double v : x) acc += std::abs(v);
    return scale_ * acc;
  }

  Vec full_subgradient(const Vec& x) const override {
    Vec g(x.size(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0.0) g[j] = x[j] > 0 ? scale_ : -scale_;
    return g;
  }

  double lipschitz_bound() const override {
    return scale_ * std::sqrt(static_cast<double>(dim_));
  }

 private:
  int dim_;
  double scale_;
};

class NoisyQuadratic final : public LocalObjective {
 public:
  NoisyQuadratic(int dim, Vec x_star, double sigma, std::uint64_t seed)
      : dim_(dim), x_star_(std::move(x_star)), sigma_(sigma), seed_(seed) {
    if (dim_ < 1) throw std::invalid_argument("noisy_quadratic: dim must be positive");
    if (sigma_ < 0) throw std::invalid_argument("noisy_quadratic: sigma must be >= 0");
    if (x_star_.size() != static_cast<std::size_t>(dim_))
      throw std::invalid_argument("noisy_quadratic: x_star dimension mismatch");
  }

  int dim() const override { return dim_; }
  std::uint64_t sample_count() const override { return std::uint64_t{1} << 32; }

  double value(const Vec& x, std::uint64_t) const override { return full_value(x); }

  Vec subgradient(const Vec& x, std::uint64_t xi) const override {
    Vec g = full_subgradient(x);
    if (sigma_ > 0.0) {
      Rng noise = Rng::stream(seed_, xi);
      for (double& v : g) v += sigma_ * noise.gaussian();
    }
    return g;
  }

  double full_value(const Vec& x) const override {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = x[j] - x_star_[j];
      acc += d * d;
    }
    return 0.5 * acc;
  }

  Vec full_subgradient(const Vec& x) const override { return sub(x, x_star_); }

 private:
  int dim_;
  Vec x_star_;
  double sigma_;
  std::uint64_t seed_;
};

}  // namespace

LocalObjectivePtr capped_l1_svm(std::vector<Sample> shard, int dim, double lambda, double alpha) {
  return std::make_shared<CappedL1Svm>(std::move(shard), dim, lambda, alpha);
}

LocalObjectivePtr l1_norm_objective(int dim, double scale) {
  return std::make_shared<L1Norm>(dim, scale);
}

LocalObjectivePtr noisy_quadratic(int dim, Vec x_star, double sigma, std::uint64_t seed) {
  return std::make_shared<NoisyQuadratic>(dim, std::move(x_star), sigma, seed);
}

double test_accuracy(const Vec& x, const Dataset& ds) {
  if (ds.samples.empty()) throw std::invalid_argument("test_accuracy: empty dataset");
  std::size_t correct = 0;
  for (const Sample& s : ds.samples) {
    const int predicted = sparse_dot(s, x) >= 0.0 ? 1 : -1;
    if (predicted == s.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(ds.size());
}

ObjectiveSuite make_svm_suite(const Dataset& ds, const Partition& part, double lambda,
                              double alpha) {
  std::vector<LocalObjectivePtr> locals;
  locals.reserve(part.shards.size());
  for (const auto& shard_indices : part.shards) {
    std::vector<Sample> shard;
    shard.reserve(shard_indices.size());
    for (std::size_t idx : shard_indices) shard.push_back(ds.samples[idx]);
    locals.push_back(capped_l1_svm(std::move(shard), ds.dim, lambda, alpha));
  }
  return ObjectiveSuite(std::move(locals));
}

}  // namespace medol
