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

#ifndef MEDOL_TESTS_SUPPORT_FIXTURES_HPP
#define MEDOL_TESTS_SUPPORT_FIXTURES_HPP

#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "medol/objectives.hpp"
#include "medol/vec.hpp"

namespace medol::testing {

// f(x) = <a, x>. Unit-Lipschitz when ||a|| = 1; deterministic in xi.
class LinearObjective final : public LocalObjective {
 public:
  explicit LinearObjective(Vec a) : a_(std::move(a)) {}

  int dim() const override { return static_cast<int>(a_.size()); }
  std::uint64_t sample_count() const override { return 1; }
  double value(const Vec& x, std::uint64_t) const override { return dot(a_, x); }
  Vec subgradient(const Vec&, std::uint64_t) const override { return a_; }
  double full_value(const Vec& x) const override { return dot(a_, x); }
  Vec full_subgradient(const Vec&) const override { return a_; }
  double lipschitz_bound() const override { return norm2(a_); }

 private:
  Vec a_;
};

// Constant objective; gradients are identically zero.
class ConstantObjective final : public LocalObjective {
 public:
  ConstantObjective(int dim, double value) : dim_(dim), value_(value) {}

  int dim() const override { return dim_; }
  std::uint64_t sample_count() const override { return 1; }
  double value(const Vec&, std::uint64_t) const override { return value_; }
  Vec subgradient(const Vec&, std::uint64_t) const override {
    return Vec(static_cast<std::size_t>(dim_), 0.0);
  }
  double full_value(const Vec&) const override { return value_; }
  Vec full_subgradient(const Vec&) const override {
    return Vec(static_cast<std::size_t>(dim_), 0.0);
  }
  double lipschitz_bound() const override { return 0.0; }

 private:
  int dim_;
  double value_;
};

inline ObjectiveSuite single_suite(LocalObjectivePtr local) {
  std::vector<LocalObjectivePtr> locals{std::move(local)};
  return ObjectiveSuite(std::move(locals));
}

inline ObjectiveSuite replicated_suite(const LocalObjectivePtr& local, int n) {
  std::vector<LocalObjectivePtr> locals(static_cast<std::size_t>(n), local);
  return ObjectiveSuite(std::move(locals));
}

inline ObjectiveSuite suite_of(std::vector<LocalObjectivePtr> locals) {
  return ObjectiveSuite(std::move(locals));
}

}  // namespace medol::testing

#endif  // MEDOL_TESTS_SUPPORT_FIXTURES_HPP
