// Copyright 2026 The miqae Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "miqae/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "miqae/error.hpp"

namespace miqae {
namespace {

double round_alpha(const EstimatorConfig& config, std::uint64_t K, double K_max) {
  return config.schedule == AlphaSchedule::kModified
             ? alpha_schedule(K, K_max, config.alpha)
             : uniform_alpha_schedule(config.alpha, config.epsilon);
}

[[noreturn]] void violation(const std::string& what, const RoundRecord& round) {
  std::ostringstream os;
  os << what << " (round " << round.index << ", K=" << round.K << ", shots=" << round.shots_used
     << "/" << round.n_max << ", theta=[" << round.interval_after.lower << ", "
     << round.interval_after.upper << "])";
  throw ContractViolation(os.str());
}

}  // namespace

void EstimatorConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < std::numbers::pi / 4.0)) {
    throw std::invalid_argument("epsilon must lie in (0, pi/4), got " + std::to_string(epsilon));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  if (n_shots == 0) throw std::invalid_argument("n_shots must be at least 1");
}

EstimationResult run_modified_iqae(const EstimatorConfig& config, SimulatedOracle& oracle) {
  config.validate();

  EstimationResult result;
  result.config = config;

  const double K_max = k_max(config.epsilon);
  const double target_width = 2.0 * config.epsilon;
  const std::uint64_t max_rounds = round_bound(config.epsilon) + 2;
  const std::uint64_t queries_at_start = oracle.queries();
  const std::uint64_t a_apps_at_start = oracle.a_applications();
  const std::uint64_t shots_at_start = oracle.shots();

  AngleInterval interval;
  std::uint64_t k = 0;

  while (interval.width() >= target_width) {
    RoundRecord round;
    round.index = static_cast<std::uint32_t>(result.rounds.size() + 1);
    round.k = k;
    round.K = 2 * k + 1;
    round.alpha_i = round_alpha(config, round.K, K_max);
    round.n_max = n_max_for_round(round.alpha_i);
    round.quadrant = quadrant_lower(round.K, interval.lower);
    round.interval_before = interval;
    round.interval_after = interval;
    if (round.index > max_rounds) violation("round count exceeded its bound", round);
    if (static_cast<double>(round.K) > K_max) violation("K exceeded pi/(4 eps)", round);

    const Parity parity = parity_of(round.quadrant);
    while (true) {
      if (round.shots_used >= round.n_max) {
        violation("round exhausted its shot budget without advancing", round);
      }
      const std::uint64_t batch = std::min(config.n_shots, round.n_max - round.shots_used);
      round.ones_observed += oracle.measure(round.k, batch);
      round.shots_used += batch;

      const AmplitudeCI ci = amplitude_interval(
          config.ci_method, {round.ones_observed, round.shots_used}, round.alpha_i);
      interval = update_theta(round.quadrant, gamma_from_amplitude(ci, parity), round.K);
      round.interval_after = interval;
      if (!invariant_holds(round.K, interval)) {
        violation("quadrant invariant broken after theta update", round);
      }
      if (interval.width() < target_width) break;
      const std::uint64_t next = find_next_k(k, interval);
      if (next != k) {
        k = next;
        break;
      }
    }

    round.queries = round.k * round.shots_used;
    result.alpha_spent += round.alpha_i;
    result.rounds.push_back(round);
  }

  result.theta_interval = interval;
  const double s_lo = std::sin(interval.lower);
  const double s_hi = std::sin(interval.upper);
  result.amplitude_interval = {s_lo * s_lo, s_hi * s_hi};
  const double s_mid = std::sin(0.5 * (interval.lower + interval.upper));
  result.point_estimate = s_mid * s_mid;
  result.total_queries = oracle.queries() - queries_at_start;
  result.total_a_applications = oracle.a_applications() - a_apps_at_start;
  result.total_shots = oracle.shots() - shots_at_start;
  return result;
}

RelativeResult run_relative_iqae(const EstimatorConfig& config, SimulatedOracle& oracle,
                                 double epsilon_floor) {
  config.validate();
  if (!(epsilon_floor > 0.0)) throw std::invalid_argument("epsilon_floor must be positive");

  RelativeResult out;
  double lower = 0.0;
  double upper = 1.0;
  double estimate = 0.5;
  double eps_i = config.epsilon;
  while (upper - lower > 2.0 * estimate * config.epsilon) {
    eps_i /= 2.0;
    if (eps_i < epsilon_floor) {
      throw ContractViolation("relative precision not reached before epsilon fell below " +
                              std::to_string(epsilon_floor) + " after " +
                              std::to_string(out.iterations) + " iterations");
    }
    EstimatorConfig inner = config;
    inner.epsilon = eps_i;
    out.last = run_modified_iqae(inner, oracle);
    ++out.iterations;
    out.epsilons.push_back(eps_i);
    out.total_queries += out.last.total_queries;
    out.total_a_applications += out.last.total_a_applications;
    out.total_shots += out.last.total_shots;
    lower = out.last.amplitude_interval.lower;
    upper = out.last.amplitude_interval.upper;
    estimate = 0.5 * (lower + upper);
  }
  return out;
}

}  // namespace miqae
