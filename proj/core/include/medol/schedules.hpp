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

#ifndef MEDOL_SCHEDULES_HPP
#define MEDOL_SCHEDULES_HPP

#include <cstdint>
#include <optional>

namespace medol {

/// Problem-level quantities the convergence-rate schedules are built
/// from. gamma bounds the initial suboptimality f(start) - inf f; G and
/// sigma bound the stochastic gradient second moment and noise; L is the
/// Lipschitz constant; L1 the gradient-Lipschitz constant (smooth mode
/// only — nonsmooth modes derive the smoothed surrogate's L1 internally).
struct ProblemConstants {
  double L = 1.0;
  double L1 = 1.0;
  double G = 1.0;
  double sigma = 1.0;
  double gamma = 1.0;
  int n = 1;
  int d = 1;
  double rho = 0.0;
};

enum class ScheduleMode { kSmooth, kNonsmoothFirst, kNonsmoothZero };

enum class EtaMode { kTheory, kExperiment };

/// Hyper-parameters resolved from a (delta, N) target. N is rounded up
/// to K * T.
struct Schedule {
  std::uint64_t N = 1;
  std::uint64_t T = 3;
  std::uint64_t K = 1;
  double D = 1.0;
  double eta = 0.1;
  double delta_prime = 0.0;
  ScheduleMode mode = ScheduleMode::kSmooth;
  EtaMode eta_mode = EtaMode::kTheory;
  bool diameter_guard_ok = true;  // sqrt(n)/(1-rho) >= 2 held
};

/// The dimension factor in the smoothed gradient's Lipschitz constant:
/// c = kappa * (1/sqrt(d)) * d!! / (d-1)!!, kappa = 2/pi for even d and
/// 1 otherwise. Evaluated in log space; tends to sqrt(2/pi) as d grows.
double geometric_constant(int d);

/// The closed-form constants behind the rate statements. cT scales the
/// rounds-per-epoch choice T = ceil(cT * (delta N)^(2/3)); c_rate is the
/// constant in E[..] <= c_rate * (delta N)^(-1/3); c_eta divides in the
/// theory learning rate eta = 8 D / (c_eta sqrt(T)). c9/c10 are the
/// zero-order moment constants (populated for every mode; they only
/// need d, L, n, rho).
struct RateConstants {
  double c1 = 0.0;
  double c3 = 0.0;
  double c9 = 0.0;
  double c10 = 0.0;
  double c_geom = 0.0;
  double cT = 0.0;      // c4 (smooth), c7 (nonsmooth first), zero-order analog
  double c_rate = 0.0;  // c5 (smooth), c8 (nonsmooth first), c11 (zero)
  double c_eta = 0.0;   // c1, or c10 in the zero-order mode
};

RateConstants constants(const ProblemConstants& pc, ScheduleMode mode);

/// Builds the schedule for a target radius delta in (0,1) and a round
/// budget of at least N. With no override, T follows the proof form
/// T = ceil(cT * (delta N)^(2/3)); a supplied c_T uses the equivalent
/// statement form T = ceil(c_T * (1-rho)^(1/3) * (delta N)^(2/3)) (the
/// two coincide for c_T = cT * (1-rho)^(-1/3)). T is clamped to >= 3.
/// D = delta (1-rho) / (2 T sqrt(n)) in smooth mode and with divisor 4
/// in the nonsmooth modes; delta_prime is 0 (smooth) or delta / 2.
Schedule make_schedule(double delta, std::uint64_t N, const ProblemConstants& pc,
                       ScheduleMode mode, EtaMode eta_mode = EtaMode::kTheory,
                       std::optional<double> c_T_override = std::nullopt);

/// Rounds needed for a (delta, epsilon) target: inverts the rate bound,
/// N = ceil((c_rate / epsilon)^3 / delta).
std::uint64_t predict_rounds(double delta, double epsilon, const ProblemConstants& pc,
                             ScheduleMode mode);

/// Pre-ceiling value of predict_rounds; exactly (c_rate/epsilon)^3/delta.
double predict_rounds_real(double delta, double epsilon, const ProblemConstants& pc,
                           ScheduleMode mode);

}  // namespace medol

#endif  // MEDOL_SCHEDULES_HPP
