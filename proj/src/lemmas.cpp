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

#include "miqae/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "miqae/geometry.hpp"
#include "miqae/rng.hpp"

namespace miqae::lemmas {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSweepTolerance = 1e-9;

void check_domain(double theta) {
  if (!(theta >= 0.0 && theta <= kHalfPi)) {
    throw std::invalid_argument("theta must lie in [0, pi/2], got " + std::to_string(theta));
  }
}

// Plain floor/ceil quadrant test, deliberately independent of geometry's
// snapped helpers.
bool same_quadrant(double scaled_lo, double scaled_hi) {
  return std::floor(scaled_lo / kHalfPi) == std::ceil(scaled_hi / kHalfPi) - 1.0;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

CheckResult sweep_epsilon_theta(std::uint64_t points) {
  double worst = -1.0;
  double worst_at = 0.0;
  for (std::uint64_t i = 0; i < points; ++i) {
    const double theta = kHalfPi * static_cast<double>(i) / static_cast<double>(points - 1);
    const double gap = epsilon_theta_bound(theta) - max_slice_distance(theta);
    if (gap > worst) {
      worst = gap;
      worst_at = theta;
    }
  }
  return {"epsilon_theta_below_f_max", worst <= kSweepTolerance,
          "max(eps_theta - f_max) = " + fmt(worst) + " at theta = " + fmt(worst_at)};
}

CheckResult sweep_f_max_minimum(std::uint64_t points) {
  // The arcsin branch of eps_theta is active on [asin(sqrt S)/2, pi/2 - ...];
  // f_max is mirror-symmetric about pi/4, so the left half suffices.
  const double lo = 0.5 * std::asin(std::sqrt(termination_width()));
  const double hi = kPi / 4.0;
  const double step = kHalfPi / static_cast<double>(points - 1);
  double best = std::numeric_limits<double>::infinity();
  double best_at = lo;
  for (std::uint64_t i = 0; i < points; ++i) {
    const double theta = step * static_cast<double>(i);
    if (theta < lo || theta > hi) continue;
    const double v = max_slice_distance(theta);
    if (v < best) {
      best = v;
      best_at = theta;
    }
  }
  // f_max is V-shaped around its minimum, so ternary search inside the
  // grid bracket converges to the kink.
  double a = std::max(lo, best_at - step);
  double b = std::min(hi, best_at + step);
  for (int it = 0; it < 200; ++it) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (max_slice_distance(m1) <= max_slice_distance(m2)) {
      b = m2;
    } else {
      a = m1;
    }
  }
  const double refined_at = 0.5 * (a + b);
  const double refined = max_slice_distance(refined_at);
  const double target_at = 4.0 * kPi / 21.0;
  const bool ok = std::fabs(refined - kPi / 42.0) <= kSweepTolerance &&
                  std::fabs(best_at - target_at) <= step;
  return {"f_max_minimum", ok,
          "min f_max = " + fmt(refined) + " at theta = " + fmt(refined_at) +
              " (grid argmin " + fmt(best_at) + ", expected pi/42 = " + fmt(kPi / 42.0) +
              " at 4pi/21 = " + fmt(target_at) + ")"};
}

CheckResult sweep_f_max_symmetry(std::uint64_t points) {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < points; ++i) {
    const double theta = kHalfPi * static_cast<double>(i) / static_cast<double>(points - 1);
    worst = std::max(worst,
                     std::fabs(max_slice_distance(theta) - max_slice_distance(kHalfPi - theta)));
  }
  return {"f_max_symmetry", worst <= kSweepTolerance, "max asymmetry = " + fmt(worst)};
}

CheckResult touch_point() {
  const double theta = 4.0 * kPi / 21.0;
  const double e = epsilon_theta_bound(theta);
  const double f = max_slice_distance(theta);
  const bool ok = std::fabs(e - kPi / 42.0) <= kSweepTolerance &&
                  std::fabs(f - kPi / 42.0) <= kSweepTolerance;
  return {"epsilon_theta_touches_f_max", ok,
          "eps_theta(4pi/21) = " + fmt(e) + ", f_max(4pi/21) = " + fmt(f)};
}

// Random pair satisfying all three hypotheses: pick a quadrant and a lower
// angle, then an upper angle whose sin^2 gap is at most S. On even quadrants
// sin^2(base + g) = sin^2(g) rises with g; on odd ones it is cos^2(g) and falls.
std::pair<double, double> random_hypothesis_pair(Engine& eng) {
  const double S = termination_width();
  while (true) {
    const std::uint64_t quadrant = eng() % 8;
    const double base = static_cast<double>(quadrant) * kHalfPi;
    const double ga = kHalfPi * uniform01(eng);
    const double gap = S * (1.0 - uniform01(eng));
    double gb;
    if (quadrant % 2 == 0) {
      const double sa = std::sin(ga) * std::sin(ga);
      gb = std::asin(std::sqrt(std::min(1.0, sa + gap)));
    } else {
      const double ca = std::cos(ga) * std::cos(ga);
      gb = std::acos(std::sqrt(std::max(0.0, ca - gap)));
    }
    // Shrink by a random fraction to cover narrower intervals too.
    const double lo = base + ga;
    const double hi = lo + (gb - ga) * (1.0 - 0.999 * uniform01(eng) * uniform01(eng));
    if (hi > lo && odd_multiplier_hypotheses_hold(lo, hi)) return {lo, hi};
  }
}

CheckResult odd_multiplier_existence(std::uint64_t trials, std::uint64_t seed) {
  Engine eng(derive_seed(seed, {1}));
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto [lo, hi] = random_hypothesis_pair(eng);
    const auto q = odd_multiplier_search(lo, hi);
    if (!q || *q % 2 == 0 || *q < 3 ||
        static_cast<double>(*q) > kHalfPi / (hi - lo)) {
      return {"odd_multiplier_existence", false,
              "no odd q for theta_a = " + fmt(lo) + ", theta_b = " + fmt(hi)};
    }
  }
  return {"odd_multiplier_existence", true,
          std::to_string(trials) + " hypothesis-satisfying pairs, all admit an odd q"};
}

std::vector<double> random_k_sequence(Engine& eng, double& k_max_out) {
  const std::uint64_t t = 1 + eng() % 12;
  std::vector<double> seq{1.0};
  for (std::uint64_t i = 0; i < t; ++i) seq.push_back(seq.back() * (3.0 + 4.0 * uniform01(eng)));
  k_max_out = seq.back() * (1.0 + 2.0 * uniform01(eng));
  return seq;
}

CheckResult increasing_sum(std::uint64_t sequences, std::uint64_t seed, bool xlogx) {
  constexpr double kAlpha = 0.05;
  Engine eng(derive_seed(seed, {xlogx ? 3u : 2u}));
  const char* name = xlogx ? "increasing_sum_xlogx" : "increasing_sum_linear";
  for (std::uint64_t s = 0; s < sequences; ++s) {
    double km = 0.0;
    const auto seq = random_k_sequence(eng, km);
    const double c = 3.0 * km / kAlpha;
    const auto f = [&](double x) { return xlogx ? x * std::log(c / x) : x; };
    if (!increasing_sum_bound_holds(seq, f, km)) {
      return {name, false, "bound violated for a sequence of length " + std::to_string(seq.size())};
    }
  }
  return {name, true, std::to_string(sequences) + " random valid sequences satisfy the bound"};
}

// Exhaustive upward search for the largest qualifying odd K, independent of
// find_next_k's control flow. It shares the snapped quadrant convention so
// that only the search itself is under test.
std::uint64_t brute_force_next_k(std::uint64_t k_i, double lo, double hi) {
  const std::uint64_t K_i = 2 * k_i + 1;
  const auto top = static_cast<std::uint64_t>(std::floor(kHalfPi / (hi - lo)));
  std::uint64_t best = 0;
  for (std::uint64_t K = 3 * K_i; K <= top; K += 2) {
    if (quadrant_lower(K, lo) == quadrant_upper(K, hi)) best = K;
  }
  return best == 0 ? k_i : (best - 1) / 2;
}

CheckResult find_next_k_agreement(std::uint64_t trials, std::uint64_t seed) {
  Engine eng(derive_seed(seed, {4}));
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t k_i = eng() % 50;
    const std::uint64_t K_i = 2 * k_i + 1;
    const double lo = kHalfPi * uniform01(eng);
    const double width = (kHalfPi / static_cast<double>(K_i)) * std::pow(uniform01(eng), 2.0) *
                         0.999 + 1e-7;
    const double hi = std::min(kHalfPi, lo + width);
    if (!(hi > lo)) continue;
    const AngleInterval interval{lo, hi};
    const std::uint64_t got = find_next_k(k_i, interval);
    const std::uint64_t want = brute_force_next_k(k_i, lo, hi);
    if (got != want) {
      return {"find_next_k_brute_force", false,
              "k_i = " + std::to_string(k_i) + ", [" + fmt(lo) + ", " + fmt(hi) +
                  "]: got " + std::to_string(got) + ", brute force " + std::to_string(want)};
    }
  }
  return {"find_next_k_brute_force", true,
          std::to_string(trials) + " random intervals agree with exhaustive search"};
}

CheckResult round_termination(std::uint64_t trials, std::uint64_t seed) {
  Engine eng(derive_seed(seed, {5}));
  const double S = termination_width();
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t k_i = eng() % 500;
    const std::uint64_t K_i = 2 * k_i + 1;
    const auto quadrant = static_cast<std::int64_t>(eng() % K_i);
    const double width = S * (1.0 - uniform01(eng));
    AmplitudeCI ci;
    const std::uint64_t edge = eng() % 10;
    if (edge == 0) {
      ci = {0.0, width, 0.0};
    } else if (edge == 1) {
      ci = {1.0 - width, 1.0, 0.0};
    } else {
      ci.a_min = (1.0 - width) * uniform01(eng);
      ci.a_max = ci.a_min + width;
    }
    const AngleInterval interval =
        update_theta(quadrant, gamma_from_amplitude(ci, parity_of(quadrant)), K_i);
    const std::uint64_t next = find_next_k(k_i, interval);
    if (next == k_i || 2 * next + 1 < 3 * K_i) {
      return {"round_termination", false,
              "no deeper K for K_i = " + std::to_string(K_i) + ", R = " +
                  std::to_string(quadrant) + ", a in [" + fmt(ci.a_min) + ", " +
                  fmt(ci.a_max) + "]"};
    }
  }
  return {"round_termination", true,
          std::to_string(trials) + " budget-exhausted rounds all found K >= 3 K_i"};
}

}  // namespace

double quadrant_slice_distance(int j, double theta) {
  if (j != 3 && j != 5 && j != 7) throw std::invalid_argument("j must be 3, 5 or 7");
  check_domain(theta);
  const double w = kPi / (2.0 * j);
  const double slice = std::min(std::floor(theta / w), static_cast<double>(j - 1));
  return std::max(0.0, std::min(theta - slice * w, (slice + 1.0) * w - theta));
}

double max_slice_distance(double theta) {
  return std::max({quadrant_slice_distance(3, theta), quadrant_slice_distance(5, theta),
                   quadrant_slice_distance(7, theta)});
}

double epsilon_theta_bound(double theta) {
  check_domain(theta);
  double bound = std::min(theta, kHalfPi - theta);
  const double s = std::sin(2.0 * theta);
  if (s > 0.0) {
    const double arg = termination_width() / s;
    if (arg <= 1.0) bound = std::min(bound, 0.5 * std::asin(arg));
  }
  return bound;
}

bool odd_multiplier_hypotheses_hold(double theta_a, double theta_b) {
  if (!(theta_b > theta_a)) return false;
  const double sa = std::sin(theta_a);
  const double sb = std::sin(theta_b);
  if (std::fabs(sb * sb - sa * sa) > termination_width()) return false;
  return same_quadrant(theta_a, theta_b);
}

std::optional<std::uint64_t> odd_multiplier_search(double theta_a, double theta_b) {
  if (!(theta_b > theta_a)) throw std::invalid_argument("need theta_b > theta_a");
  if (!same_quadrant(theta_a, theta_b)) {
    throw std::invalid_argument("theta_a and theta_b must lie in the same quadrant");
  }
  const double top = kHalfPi / (theta_b - theta_a);
  for (std::uint64_t q = 3; static_cast<double>(q) <= top; q += 2) {
    const double x = static_cast<double>(q);
    if (same_quadrant(x * theta_a, x * theta_b)) return q;
  }
  return std::nullopt;
}

bool increasing_sum_bound_holds(std::span<const double> k_sequence,
                                const std::function<double(double)>& f, double k_max) {
  if (k_sequence.empty() || k_sequence.front() != 1.0) {
    throw std::invalid_argument("K sequence must start at K_0 = 1");
  }
  for (std::size_t i = 1; i < k_sequence.size(); ++i) {
    if (k_sequence[i] < 3.0 * k_sequence[i - 1]) {
      throw std::invalid_argument("K sequence must grow by at least a factor of 3");
    }
  }
  if (k_sequence.back() > k_max) throw std::invalid_argument("K sequence exceeds K_max");

  const std::size_t t = k_sequence.size() - 1;
  double lhs = 0.0;
  for (std::size_t i = 1; i <= t; ++i) lhs += f(k_sequence[i]);
  double rhs = 0.0;
  double k = k_max;
  for (std::size_t i = 0; i < t; ++i, k /= 3.0) rhs += f(k);
  // Saturating sequences hit equality; allow for rounding in f.
  return lhs <= rhs + 1e-12 * std::max(1.0, std::fabs(rhs));
}

std::vector<CheckResult> run_verification(const VerificationOptions& options) {
  if (options.grid_points < 3) throw std::invalid_argument("grid_points must be at least 3");
  const std::uint64_t sequences = std::max<std::uint64_t>(1, options.trials / 10);
  return {
      sweep_epsilon_theta(options.grid_points),
      sweep_f_max_minimum(options.grid_points),
      sweep_f_max_symmetry(options.grid_points),
      touch_point(),
      odd_multiplier_existence(options.trials, options.seed),
      increasing_sum(sequences, options.seed, false),
      increasing_sum(sequences, options.seed, true),
      find_next_k_agreement(options.trials, options.seed),
      round_termination(options.trials, options.seed),
  };
}

}  // namespace miqae::lemmas
