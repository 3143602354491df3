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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace miqae::lemmas {

/// Distance from theta to the nearest multiple of pi/(2j) in [0, pi/2].
/// j must be 3, 5 or 7.
double quadrant_slice_distance(int j, double theta);

/// max over j in {3, 5, 7} of quadrant_slice_distance(j, theta).
double max_slice_distance(double theta);

/// Largest half-width of an angle interval centred at theta whose sin^2 gap
/// stays within termination_width(), capped by the quadrant edges.
double epsilon_theta_bound(double theta);

/// Brute-force search for the first odd q in [3, (pi/2)/(theta_b - theta_a)]
/// keeping [q theta_a, q theta_b] in one quadrant. Throws
/// std::invalid_argument when theta_b <= theta_a or the pair straddles a
/// quadrant boundary. The sin^2 gap precondition is not enforced: callers
/// may probe pairs outside it.
std::optional<std::uint64_t> odd_multiplier_search(double theta_a, double theta_b);

/// True iff (theta_a, theta_b) satisfies all three hypotheses under which an
/// odd multiplier is guaranteed.
bool odd_multiplier_hypotheses_hold(double theta_a, double theta_b);

/// Checks sum_{i>=1} f(K_i) <= sum_{i=0}^{t-1} f(K_max / 3^i) for a sequence
/// K_0 = 1, K_i >= 3 K_{i-1}, K_t <= K_max. Throws std::invalid_argument on an
/// invalid sequence.
bool increasing_sum_bound_holds(std::span<const double> k_sequence,
                                const std::function<double(double)>& f,
                                double k_max);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationOptions {
  std::uint64_t grid_points = 100000;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 20230101;
};

/// Runs every numerical lemma check and returns one result per check.
std::vector<CheckResult> run_verification(const VerificationOptions& options);

}  // namespace miqae::lemmas
