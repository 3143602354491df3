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

#include "miqae/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace miqae {
namespace {

constexpr double kSnapTolerance = 1e-9;
// Candidate K values above this are not representable exactly as doubles.
constexpr double kLargestCandidate = 9007199254740991.0;  // 2^53 - 1

void check_odd(std::uint64_t K) {
  if (K == 0 || K % 2 == 0) {
    throw std::invalid_argument("Grover multiplier K must be odd and positive, got " +
                                std::to_string(K));
  }
}

}  // namespace

double termination_width() {
  static const double value =
      std::sin(std::numbers::pi / 21.0) * std::sin(8.0 * std::numbers::pi / 21.0);
  return value;
}

double shot_constant() {
  static const double value = 1.0 / (termination_width() * termination_width());
  return value;
}

std::string_view to_string(AlphaSchedule schedule) {
  return schedule == AlphaSchedule::kModified ? "modified" : "uniform";
}

AlphaSchedule parse_alpha_schedule(std::string_view name) {
  if (name == "modified") return AlphaSchedule::kModified;
  if (name == "uniform") return AlphaSchedule::kUniform;
  throw std::invalid_argument("unknown alpha schedule '" + std::string(name) + "'");
}

double k_max(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  return std::numbers::pi / (4.0 * epsilon);
}

std::uint64_t round_bound(double epsilon) {
  const double rounds = std::ceil(std::log(k_max(epsilon)) / std::log(3.0));
  return rounds < 1.0 ? 1 : static_cast<std::uint64_t>(rounds);
}

double scaled_quadrant_position(std::uint64_t K, double theta) {
  const double x = static_cast<double>(K) * theta / kHalfPi;
  const double nearest = std::round(x);
  if (std::fabs(x - nearest) < kSnapTolerance * std::max(1.0, std::fabs(x))) return nearest;
  return x;
}

std::int64_t quadrant_lower(std::uint64_t K, double theta) {
  return static_cast<std::int64_t>(std::floor(scaled_quadrant_position(K, theta)));
}

std::int64_t quadrant_upper(std::uint64_t K, double theta) {
  return static_cast<std::int64_t>(std::ceil(scaled_quadrant_position(K, theta))) - 1;
}

bool invariant_holds(std::uint64_t K, const AngleInterval& interval) {
  return quadrant_lower(K, interval.lower) == quadrant_upper(K, interval.upper);
}

GammaInterval gamma_from_amplitude(const AmplitudeCI& ci, Parity parity) {
  if (!(ci.a_min >= 0.0 && ci.a_min <= ci.a_max && ci.a_max <= 1.0)) {
    throw std::invalid_argument("amplitude interval must satisfy 0 <= a_min <= a_max <= 1");
  }
  const double g_lo = std::asin(std::sqrt(ci.a_min));
  const double g_hi = std::asin(std::sqrt(ci.a_max));
  if (parity == Parity::kEven) return {g_lo, g_hi};
  // sin^2 is decreasing on odd quadrants.
  return {kHalfPi - g_hi, kHalfPi - g_lo};
}

AngleInterval update_theta(std::int64_t quadrant, const GammaInterval& gammas,
                           std::uint64_t K) {
  check_odd(K);
  if (!(gammas.min >= 0.0 && gammas.min <= gammas.max && gammas.max <= kHalfPi)) {
    throw std::invalid_argument("gamma interval must satisfy 0 <= min <= max <= pi/2");
  }
  const double base = static_cast<double>(quadrant) * kHalfPi;
  const double k = static_cast<double>(K);
  AngleInterval out{(base + gammas.min) / k, (base + gammas.max) / k};
  out.lower = std::clamp(out.lower, 0.0, kHalfPi);
  out.upper = std::clamp(out.upper, out.lower, kHalfPi);
  return out;
}

std::uint64_t find_next_k(std::uint64_t k_i, const AngleInterval& interval) {
  const std::uint64_t K_i = 2 * k_i + 1;
  const double width = interval.width();
  if (!(width > 0.0)) return k_i;
  const double top = std::floor(std::min(kHalfPi / width, kLargestCandidate));
  auto K = static_cast<std::uint64_t>(top);
  if (K % 2 == 0) {
    if (K == 0) return k_i;
    --K;
  }
  for (; K >= 3 * K_i; K -= 2) {
    if (invariant_holds(K, interval)) return (K - 1) / 2;
    if (K < 2) break;
  }
  return k_i;
}

double alpha_schedule(std::uint64_t K_i, double K_max, double alpha) {
  return (2.0 * alpha / 3.0) * (static_cast<double>(K_i) / K_max);
}

double uniform_alpha_schedule(double alpha, double epsilon) {
  return alpha / static_cast<double>(round_bound(epsilon));
}

std::uint64_t n_max_for_round(double alpha_i) {
  if (!(alpha_i > 0.0 && alpha_i < 1.0)) {
    throw std::invalid_argument("alpha_i must lie in (0, 1), got " + std::to_string(alpha_i));
  }
  return static_cast<std::uint64_t>(std::ceil(2.0 * shot_constant() * std::log(2.0 / alpha_i)));
}

}  // namespace miqae
