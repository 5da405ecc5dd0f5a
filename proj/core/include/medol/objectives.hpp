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

#ifndef MEDOL_OBJECTIVES_HPP
#define MEDOL_OBJECTIVES_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "medol/dataio.hpp"
#include "medol/vec.hpp"

namespace medol {

/// One agent's local stochastic objective. value() and subgradient()
/// must be deterministic functions of (x, xi), where xi indexes a data
/// sample (or noise realization) in [0, sample_count()). full_value()
/// and full_subgradient() are the exact local objective and one of its
/// Clarke subgradients. Instances are immutable; randomness is supplied
/// by the caller's xi, keeping objectives pure.
class LocalObjective {
 public:
  virtual ~LocalObjective() = default;

  virtual int dim() const = 0;
  virtual std::uint64_t sample_count() const = 0;
  virtual double value(const Vec& x, std::uint64_t xi) const = 0;
  virtual Vec subgradient(const Vec& x, std::uint64_t xi) const = 0;
  virtual double full_value(const Vec& x) const = 0;
  virtual Vec full_subgradient(const Vec& x) const = 0;

  /// Global Lipschitz bound on value(., xi) if known, +inf otherwise.
  virtual double lipschitz_bound() const { return std::numeric_limits<double>::infinity(); }
};

using LocalObjectivePtr = std::shared_ptr<const LocalObjective>;

/// The n local objectives making up the global average objective
/// f(x) = (1/n) sum_i f^i(x). All locals share one dimension.
class ObjectiveSuite {
 public:
  explicit ObjectiveSuite(std::vector<LocalObjectivePtr> locals);

  int agents() const { return static_cast<int>(locals_.size()); }
  int dim() const { return dim_; }
  double lipschitz_bound() const { return lipschitz_; }
  const LocalObjective& local(int i) const { return *locals_[static_cast<std::size_t>(i)]; }

  double global_value(const Vec& x) const;
  Vec global_subgradient(const Vec& x) const;

 private:
  std::vector<LocalObjectivePtr> locals_;
  int dim_ = 0;
  double lipschitz_ = 0.0;
};

/// Nonconvex penalized SVM: hinge loss averaged over the shard plus the
/// capped-l1 regularizer lambda * sum_j min(|x_j|, alpha), counted once.
/// Kink conventions: subgradient 0 at margin exactly 1, at x_j = 0, and
/// at |x_j| = alpha.
LocalObjectivePtr capped_l1_svm(std::vector<Sample> shard, int dim, double lambda, double alpha);

/// f(x) = scale * ||x||_1, deterministic in xi. Subgradient is
/// scale * sign(x) with 0 at kinks.
LocalObjectivePtr l1_norm_objective(int dim, double scale);

/// f(x) = 0.5 ||x - x_star||^2 with per-xi Gaussian gradient noise of
/// standard deviation sigma per coordinate, deterministic in (seed, xi).
/// full_value / full_subgradient are the exact noise-free quantities.
LocalObjectivePtr noisy_quadratic(int dim, Vec x_star, double sigma, std::uint64_t seed);

/// Fraction of samples with sign(<a, x>) == b; sign(0) counts as +1.
double test_accuracy(const Vec& x, const Dataset& ds);

/// Sparse-dense inner product <a, x> with 1-based feature indices.
double sparse_dot(const Sample& s, const Vec& x);

/// Builds one capped-l1 SVM local per partition shard.
ObjectiveSuite make_svm_suite(const Dataset& ds, const Partition& part, double lambda,
                              double alpha);

}  // namespace medol

#endif  // MEDOL_OBJECTIVES_HPP
