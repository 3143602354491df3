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

#pragma once

#include <cstdint>
#include <vector>

#include "miqae/confidence.hpp"
#include "miqae/geometry.hpp"
#include "miqae/oracle.hpp"

namespace miqae {

struct EstimatorConfig {
  double epsilon = 1e-3;
  double alpha = 0.05;
  std::uint64_t n_shots = 100;
  CiMethod ci_method = CiMethod::kChernoff;
  AlphaSchedule schedule = AlphaSchedule::kModified;

  /// Throws std::invalid_argument unless 0 < epsilon < pi/4, 0 < alpha < 1
  /// and n_shots >= 1.
  void validate() const;
};

struct RoundRecord {
  std::uint32_t index = 0;  // 1-based
  std::uint64_t k = 0;
  std::uint64_t K = 1;
  double alpha_i = 0.0;
  std::uint64_t n_max = 0;
  std::int64_t quadrant = 0;
  std::uint64_t shots_used = 0;
  std::uint64_t ones_observed = 0;
  AngleInterval interval_before;
  AngleInterval interval_after;
  std::uint64_t queries = 0;
};

struct AmplitudeInterval {
  double lower = 0.0;
  double upper = 1.0;

  double width() const { return upper - lower; }
  bool contains(double a) const { return lower <= a && a <= upper; }
};

struct EstimationResult {
  EstimatorConfig config;
  AmplitudeInterval amplitude_interval;
  AngleInterval theta_interval;
  double point_estimate = 0.0;
  std::uint64_t total_queries = 0;
  std::uint64_t total_a_applications = 0;
  std::uint64_t total_shots = 0;
  /// Sum of alpha_i over the rounds actually executed.
  double alpha_spent = 0.0;
  std::vector<RoundRecord> rounds;
};

/// Runs modified IQAE against the oracle. Counter deltas on the oracle are
/// attributed to this run. Throws ContractViolation if a round exhausts its
/// shot budget without advancing or the round count exceeds its bound + 2.
EstimationResult run_modified_iqae(const EstimatorConfig& config,
                                   SimulatedOracle& oracle);

struct RelativeResult {
  /// Result of the last absolute-precision call.
  EstimationResult last;
  std::uint32_t iterations = 0;
  std::vector<double> epsilons;
  std::uint64_t total_queries = 0;
  std::uint64_t total_a_applications = 0;
  std::uint64_t total_shots = 0;

  double estimate() const {
    return 0.5 * (last.amplitude_interval.lower + last.amplitude_interval.upper);
  }
};

/// Halves the absolute precision from config.epsilon until the returned
/// interval satisfies a_u - a_l <= 2 a_hat epsilon, where a_hat is the
/// interval midpoint. Throws ContractViolation once the working precision
/// drops below epsilon_floor (the a = 0 case never converges).
RelativeResult run_relative_iqae(const EstimatorConfig& config,
                                 SimulatedOracle& oracle,
                                 double epsilon_floor = 1e-7);

}  // namespace miqae
