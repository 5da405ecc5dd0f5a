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

#include "medol/schedules.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace medol {

namespace {

void check_pc(const ProblemConstants& pc) {
  if (!(pc.rho >= 0.0 && pc.rho < 1.0))
    throw std::invalid_argument("schedules: rho must lie in [0, 1)");
  if (pc.n < 1 || pc.d < 1) throw std::invalid_argument("schedules: n and d must be positive");
  if (pc.L < 0 || pc.L1 < 0 || pc.G < 0 || pc.sigma < 0 || pc.gamma < 0)
    throw std::invalid_argument("schedules: constants must be nonnegative");
}

double c1_of(double G, double L, double n_sqrt, double gap) {
  return 4.0 * std::sqrt((G * G * gap + 4.0 * G * (L + G) * n_sqrt) / (2.0 * gap));
}

}  // namespace

double geometric_constant(int d) {
  if (d < 1) throw std::invalid_argument("geometric_constant: d must be positive");
  // log(d!!) - log((d-1)!!); 0!! = 1.
  double log_ratio = 0.0;
  for (int k = d; k >= 1; k -= 2) log_ratio += std::log(static_cast<double>(k));
  for (int k = d - 1; k >= 1; k -= 2) log_ratio -= std::log(static_cast<double>(k));
  const double kappa = d % 2 == 0 ? 2.0 / std::numbers::pi : 1.0;
  return kappa * std::exp(log_ratio - 0.5 * std::log(static_cast<double>(d)));
}

RateConstants constants(const ProblemConstants& pc, ScheduleMode mode) {
  check_pc(pc);
  const double gap = 1.0 - pc.rho;
  const double n_sqrt = std::sqrt(static_cast<double>(pc.n));
  const double d_sqrt = std::sqrt(static_cast<double>(pc.d));

  RateConstants c;
  c.c1 = c1_of(pc.G, pc.L, n_sqrt, gap);
  c.c3 = 3.0 * n_sqrt / gap + 5.0;
  c.c_geom = geometric_constant(pc.d);
  c.c9 = std::sqrt(16.0 * std::sqrt(2.0 * std::numbers::pi) * static_cast<double>(pc.d) *
                   pc.L * pc.L);
  c.c10 = c1_of(c.c9, pc.L, n_sqrt, gap);

  const double gamma_prime = pc.gamma + pc.L;
  switch (mode) {
    case ScheduleMode::kSmooth: {
      // The agents' own smoothness bound enters directly.
      const double inner = 2.0 * pc.sigma + 2.0 * c.c1 * n_sqrt + pc.L1 * gap * c.c3;
      c.cT = std::pow(gap * inner / (8.0 * pc.gamma * pc.n), 2.0 / 3.0);
      c.c_rate = 1.5 * std::cbrt(pc.gamma * inner * inner / (gap * n_sqrt));
      c.c_eta = c.c1;
      break;
    }
    case ScheduleMode::kNonsmoothFirst: {
      // Smoothing at delta/2 gives L1 = 2 c_geom L sqrt(d) / delta; the
      // delta cancels against the (delta/2) radius in these expressions.
      const double inner = 2.0 * pc.G + 2.0 * c.c1 * n_sqrt + c.c_geom * pc.L * d_sqrt * gap * c.c3;
      c.cT = std::pow(gap * inner / (16.0 * gamma_prime * pc.n), 2.0 / 3.0);
      c.c_rate = 3.0 * std::cbrt(gamma_prime * inner * inner / (4.0 * gap * n_sqrt));
      c.c_eta = c.c1;
      break;
    }
    case ScheduleMode::kNonsmoothZero: {
      // c9 replaces the gradient second-moment bound, c10 replaces c1.
      const double inner =
          2.0 * c.c9 + 2.0 * c.c10 * n_sqrt + c.c_geom * pc.L * d_sqrt * gap * c.c3;
      c.cT = std::pow(gap * inner / (16.0 * gamma_prime * pc.n), 2.0 / 3.0);
      c.c_rate = 3.0 * std::cbrt(gamma_prime * inner * inner / (4.0 * gap * n_sqrt));
      c.c_eta = c.c10;
      break;
    }
  }
  return c;
}

Schedule make_schedule(double delta, std::uint64_t N, const ProblemConstants& pc,
                       ScheduleMode mode, EtaMode eta_mode,
                       std::optional<double> c_T_override) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("make_schedule: delta must lie in (0, 1)");
  if (N < 1) throw std::invalid_argument("make_schedule: N must be >= 1");
  const RateConstants c = constants(pc, mode);

  const double gap = 1.0 - pc.rho;
  const double dn_pow = std::pow(delta * static_cast<double>(N), 2.0 / 3.0);
  const double t_raw = c_T_override ? *c_T_override * std::cbrt(gap) * dn_pow : c.cT * dn_pow;
  if (!std::isfinite(t_raw)) throw std::invalid_argument("make_schedule: degenerate T");

  Schedule s;
  s.mode = mode;
  s.eta_mode = eta_mode;
  s.T = std::max<std::uint64_t>(3, static_cast<std::uint64_t>(std::ceil(t_raw)));
  s.K = (N + s.T - 1) / s.T;
  s.N = s.K * s.T;

  const double divisor = mode == ScheduleMode::kSmooth ? 2.0 : 4.0;
  s.D = delta * gap / (divisor * static_cast<double>(s.T) * std::sqrt(static_cast<double>(pc.n)));
  s.eta = eta_mode == EtaMode::kTheory
              ? 8.0 * s.D / (c.c_eta * std::sqrt(static_cast<double>(s.T)))
              : 0.01 * s.D;
  s.delta_prime = mode == ScheduleMode::kSmooth ? 0.0 : delta / 2.0;
  s.diameter_guard_ok = std::sqrt(static_cast<double>(pc.n)) / gap >= 2.0;
  return s;
}

double predict_rounds_real(double delta, double epsilon, const ProblemConstants& pc,
                           ScheduleMode mode) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("predict_rounds: delta must lie in (0, 1)");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("predict_rounds: epsilon must lie in (0, 1)");
  const RateConstants c = constants(pc, mode);
  const double ratio = c.c_rate / epsilon;
  return ratio * ratio * ratio / delta;
}

std::uint64_t predict_rounds(double delta, double epsilon, const ProblemConstants& pc,
                             ScheduleMode mode) {
  return static_cast<std::uint64_t>(std::ceil(predict_rounds_real(delta, epsilon, pc, mode)));
}

}  // namespace medol
