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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace miqae {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Constants, FrozenValues) {
  EXPECT_NEAR(termination_width(), 2 * 0.069369766510921399, 1e-15);
  EXPECT_NEAR(shot_constant(), 51.951673659479473, 1e-12);
  EXPECT_DOUBLE_EQ(k_max(kPi / 400), 100.0);
  EXPECT_NEAR(k_max(1e-3), 785.3981633974483, 1e-10);
  EXPECT_THROW(k_max(0.0), std::invalid_argument);
}

TEST(Schedule, RoundBound) {
  EXPECT_EQ(round_bound(1e-2), 4u);
  EXPECT_EQ(round_bound(1e-3), 7u);
  EXPECT_EQ(round_bound(1e-4), 9u);
  EXPECT_EQ(round_bound(0.7), 1u);
}

TEST(Schedule, AlphaProportionalToK) {
  const double km = k_max(1e-3);
  EXPECT_NEAR(alpha_schedule(1, km, 0.05), 4.244131815783876e-5, 1e-18);
  EXPECT_NEAR(alpha_schedule(785, km, 0.05), 2 * 0.05 / 3 * 785 / km, 1e-16);
  EXPECT_DOUBLE_EQ(uniform_alpha_schedule(0.05, 1e-3), 0.05 / 7);
}

TEST(Schedule, WorstCaseSumStaysBelowAlpha) {
  // Fastest admissible growth is K_{i+1} = 3 K_i; slower growth only lowers
  // the sum of alpha_i over rounds with K_i <= K_max.
  for (double eps : {0.3, 0.1, 1e-2, 1e-3, 1e-4, 1e-6}) {
    const double km = k_max(eps);
    double sum = 0;
    for (std::uint64_t K = 1; double(K) <= km; K *= 3) sum += alpha_schedule(K, km, 0.05);
    EXPECT_LE(sum, 0.05) << eps;
  }
}

TEST(Schedule, ShotCap) {
  EXPECT_EQ(n_max_for_round(4.244131815783876e-5), 1119u);
  EXPECT_EQ(n_max_for_round(1.0 - 1e-15), 73u);
  EXPECT_THROW(n_max_for_round(0.0), std::invalid_argument);
  EXPECT_THROW(n_max_for_round(1.0), std::invalid_argument);
  EXPECT_EQ(parse_alpha_schedule("uniform"), AlphaSchedule::kUniform);
  EXPECT_EQ(to_string(AlphaSchedule::kModified), "modified");
}

TEST(Quadrant, BoundaryConvention) {
  // scaled angle pi: interval may start in quadrant 2
  EXPECT_EQ(quadrant_lower(3, kPi / 3), 2);
  // scaled angle 3 pi / 2: interval may end in quadrant 2
  EXPECT_EQ(quadrant_upper(3, kPi / 2), 2);
  EXPECT_EQ(quadrant_lower(5, 2.5 * kHalfPi / 5), 2);
  EXPECT_EQ(quadrant_upper(5, 2.5 * kHalfPi / 5), 2);
  EXPECT_EQ(quadrant_upper(1, 0.0), -1);
}

TEST(Quadrant, BoundariesSnapAcrossManyK) {
  for (std::uint64_t K = 1; K < 2000; K += 2) {
    for (std::uint64_t m = 0; m <= K; m += (K / 17 + 1)) {
      const double theta = double(m) * kHalfPi / double(K);
      ASSERT_EQ(quadrant_lower(K, theta), std::int64_t(m)) << K << " " << m;
      ASSERT_EQ(quadrant_upper(K, theta), std::int64_t(m) - 1) << K << " " << m;
    }
  }
}

TEST(Invariant, Examples) {
  EXPECT_TRUE(invariant_holds(1, {0.0, kHalfPi}));
  EXPECT_FALSE(invariant_holds(3, {0.0, kHalfPi}));
  EXPECT_TRUE(invariant_holds(65, {0.1, 0.12}));
  EXPECT_FALSE(invariant_holds(67, {0.1, 0.12}));
}

TEST(Gamma, ParityConversion) {
  auto even = gamma_from_amplitude({0.0, 1.0, 0.05}, Parity::kEven);
  EXPECT_DOUBLE_EQ(even.min, 0.0);
  EXPECT_DOUBLE_EQ(even.max, kHalfPi);
  auto odd = gamma_from_amplitude({0.2, 0.5, 0.05}, Parity::kOdd);
  EXPECT_NEAR(odd.min, 0.7853981633974483, 1e-15);
  EXPECT_NEAR(odd.max, 1.1071487177940905, 1e-15);
  EXPECT_THROW(gamma_from_amplitude({0.6, 0.5, 0.05}, Parity::kEven), std::invalid_argument);
  EXPECT_THROW(gamma_from_amplitude({-0.1, 0.5, 0.05}, Parity::kOdd), std::invalid_argument);
}

TEST(Gamma, PreservesAmplitudeWidth) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 5000; ++i) {
    double lo = u(rng), hi = u(rng);
    if (lo > hi) std::swap(lo, hi);
    for (auto p : {Parity::kEven, Parity::kOdd}) {
      auto g = gamma_from_amplitude({lo, hi, 0.05}, p);
      ASSERT_LE(g.min, g.max);
      ASSERT_NEAR(std::fabs(std::pow(std::sin(g.max), 2) - std::pow(std::sin(g.min), 2)),
                  hi - lo, 1e-12);
      // sin^2((2m+1) pi/2 + gamma) = cos^2(gamma)
      const double s_lo = p == Parity::kEven ? std::pow(std::sin(g.min), 2)
                                             : std::pow(std::cos(g.max), 2);
      ASSERT_NEAR(s_lo, lo, 1e-12);
    }
  }
}

TEST(Update, Examples) {
  auto t = update_theta(4, {0.2, 0.3}, 65);
  EXPECT_NEAR(t.lower, (2 * kPi + 0.2) / 65, 1e-15);
  EXPECT_NEAR(t.upper, (2 * kPi + 0.3) / 65, 1e-15);
  auto full = update_theta(0, {0.0, kHalfPi}, 1);
  EXPECT_DOUBLE_EQ(full.lower, 0.0);
  EXPECT_DOUBLE_EQ(full.upper, kHalfPi);
  EXPECT_THROW(update_theta(0, {0.0, 0.1}, 4), std::invalid_argument);
  EXPECT_THROW(update_theta(0, {0.2, 0.1}, 3), std::invalid_argument);
}

TEST(Update, StaysInsideQuadrant) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, kHalfPi);
  for (int i = 0; i < 5000; ++i) {
    const std::uint64_t K = 2 * (rng() % 5000) + 1;
    const std::int64_t R = std::int64_t(rng() % K);
    double g0 = u(rng), g1 = u(rng);
    if (g0 > g1) std::swap(g0, g1);
    auto t = update_theta(R, {g0, g1}, K);
    ASSERT_LE(t.width(), kHalfPi / double(K) + 1e-15);
    ASSERT_GE(t.lower, double(R) * kHalfPi / double(K) - 1e-15);
    ASSERT_LE(t.upper, double(R + 1) * kHalfPi / double(K) + 1e-15);
    ASSERT_TRUE(invariant_holds(K, t));
  }
}

// Independent reference: scan every odd K upward, apply the boundary rule
// with its own rounding guard.
std::uint64_t reference_next_k(std::uint64_t k, double lo, double hi) {
  auto snapped = [](double x) {
    const double r = std::round(x);
    return std::fabs(x - r) < 1e-9 * std::max(1.0, std::fabs(x)) ? r : x;
  };
  std::uint64_t best = k;
  for (std::uint64_t K = 3 * (2 * k + 1); double(K) * (hi - lo) <= kHalfPi; K += 2) {
    const double a = snapped(double(K) * lo / kHalfPi);
    const double b = snapped(double(K) * hi / kHalfPi);
    if (std::floor(a) == std::ceil(b) - 1) best = (K - 1) / 2;
  }
  return best;
}

TEST(FindNextK, Examples) {
  EXPECT_EQ(find_next_k(0, {0.1, 0.12}), 32u);
  EXPECT_EQ(find_next_k(0, {0.0, kHalfPi}), 0u);
  EXPECT_EQ(find_next_k(5, {0.3, 0.3}), 5u);
}

TEST(FindNextK, AgreesWithExhaustiveScan) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0, kHalfPi), lw(-4.5, -0.3);
  for (int i = 0; i < 4000; ++i) {
    const double w = std::pow(10.0, lw(rng));
    const double lo = u(rng) * (1 - w / kHalfPi);
    const AngleInterval iv{lo, lo + w};
    const std::uint64_t k = rng() % 3 == 0 ? 0 : rng() % 4;
    const std::uint64_t expect = reference_next_k(k, lo, lo + w);
    const std::uint64_t got = find_next_k(k, iv);
    ASSERT_EQ(got, expect) << lo << " " << w << " k=" << k;
    const std::uint64_t K = 2 * got + 1;
    if (got != k) {
      ASSERT_GE(K, 3 * (2 * k + 1));
      ASSERT_LE(double(K), kHalfPi / iv.width());
      ASSERT_TRUE(invariant_holds(K, iv));
    }
  }
}

}  // namespace
}  // namespace miqae
