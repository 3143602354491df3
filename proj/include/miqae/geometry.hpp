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
#include <numbers>

#include "miqae/confidence.hpp"

namespace miqae {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// sin(pi/21) sin(8pi/21): the largest a-interval width for which a deeper
/// odd multiple of the current K is guaranteed to exist.
double termination_width();

/// 1 / (sin^2(pi/21) sin^2(8pi/21)).
double shot_constant();

/// Confidence interval [lower, upper] for theta_a, in radians.
struct AngleInterval {
  double lower = 0.0;
  double upper = kHalfPi;

  double width() const { return upper - lower; }
  bool contains(double theta) const { return lower <= theta && theta <= upper; }
};

enum class Parity { kEven, kOdd };

inline Parity parity_of(std::int64_t quadrant) {
  return (quadrant % 2 == 0) ? Parity::kEven : Parity::kOdd;
}

/// Interval for the in-quadrant angle gamma with sin^2 monotone on it.
struct GammaInterval {
  double min = 0.0;
  double max = kHalfPi;
};

/// Per-round schedule and its derived quantities.
struct RoundSchedule {
  std::uint64_t k = 0;
  std::uint64_t K = 1;
  double alpha_i = 0.0;
  std::uint64_t n_max = 0;
  std::int64_t quadrant = 0;
};

enum class AlphaSchedule { kModified, kUniform };

std::string_view to_string(AlphaSchedule schedule);
AlphaSchedule parse_alpha_schedule(std::string_view name);

/// pi / (4 eps): upper bound on every K reached at precision eps.
double k_max(double epsilon);

/// ceil(log_3(pi / (4 eps))): bound on the number of rounds.
std::uint64_t round_bound(double epsilon);

/// Scaled angle K theta / (pi/2), snapped to the nearest integer when within
/// 1e-9 * max(1, x) of it.
double scaled_quadrant_position(std::uint64_t K, double theta);

std::int64_t quadrant_lower(std::uint64_t K, double theta);
/// Like quadrant_lower, but an angle exactly on a quadrant boundary maps to
/// the previous quadrant.
std::int64_t quadrant_upper(std::uint64_t K, double theta);

/// True iff [K theta_l, K theta_u] lies in one quadrant.
bool invariant_holds(std::uint64_t K, const AngleInterval& interval);

/// Table conversion from an interval on sin^2(K theta_a) to an interval on
/// the in-quadrant angle, given the parity of the quadrant count.
GammaInterval gamma_from_amplitude(const AmplitudeCI& ci, Parity parity);

AngleInterval update_theta(std::int64_t quadrant, const GammaInterval& gammas,
                           std::uint64_t K);

/// Largest odd K in [3 K_i, (pi/2)/width] keeping the scaled interval in one
/// quadrant, returned as k = (K-1)/2; returns k_i when none exists.
std::uint64_t find_next_k(std::uint64_t k_i, const AngleInterval& interval);

/// Modified schedule (2 alpha / 3) K_i / K_max.
double alpha_schedule(std::uint64_t K_i, double K_max, double alpha);

/// Uniform baseline alpha / T with T = round_bound(epsilon).
double uniform_alpha_schedule(double alpha, double epsilon);

/// ceil(2 C ln(2 / alpha_i)).
std::uint64_t n_max_for_round(double alpha_i);

}  // namespace miqae
