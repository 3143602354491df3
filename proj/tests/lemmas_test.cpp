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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "miqae/geometry.hpp"

namespace miqae::lemmas {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(SliceDistance, Examples) {
  EXPECT_DOUBLE_EQ(quadrant_slice_distance(3, 0.0), 0.0);
  EXPECT_NEAR(quadrant_slice_distance(3, kPi / 12), kPi / 12, 1e-15);
  EXPECT_DOUBLE_EQ(max_slice_distance(0.0), 0.0);
  EXPECT_NEAR(max_slice_distance(kHalfPi), 0.0, 1e-15);
  // At 4 pi / 21 both the j=3 and j=7 slices sit pi/42 away; j=5 is closer.
  const double t = 4 * kPi / 21;
  EXPECT_NEAR(quadrant_slice_distance(3, t), kPi / 42, 1e-15);
  EXPECT_NEAR(quadrant_slice_distance(7, t), kPi / 42, 1e-15);
  EXPECT_NEAR(quadrant_slice_distance(5, t), 0.2 * kPi / 21, 1e-15);
  EXPECT_NEAR(max_slice_distance(t), kPi / 42, 1e-15);
  EXPECT_THROW(quadrant_slice_distance(4, 0.1), std::invalid_argument);
  EXPECT_THROW(quadrant_slice_distance(3, 2.0), std::invalid_argument);
}

TEST(SliceDistance, MirrorSymmetry) {
  for (int i = 0; i <= 1000; ++i) {
    const double t = kHalfPi * i / 1000.0;
    ASSERT_NEAR(max_slice_distance(t), max_slice_distance(kHalfPi - t), 1e-12) << t;
  }
}

TEST(EpsilonTheta, TouchesAtMinimum) {
  EXPECT_DOUBLE_EQ(epsilon_theta_bound(0.0), 0.0);
  EXPECT_NEAR(epsilon_theta_bound(4 * kPi / 21), kPi / 42, 1e-14);
  EXPECT_NEAR(epsilon_theta_bound(kHalfPi - 4 * kPi / 21), kPi / 42, 1e-14);
}

TEST(EpsilonTheta, NeverExceedsSliceDistance) {
  for (int i = 0; i <= 20000; ++i) {
    const double t = kHalfPi * i / 20000.0;
    ASSERT_LE(epsilon_theta_bound(t), max_slice_distance(t) + 1e-12) << t;
  }
}

TEST(OddMultiplier, FindsMultiplierUnderHypotheses) {
  ASSERT_TRUE(odd_multiplier_hypotheses_hold(0.18, 0.19));
  auto q = odd_multiplier_search(0.18, 0.19);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q % 2, 1u);
  EXPECT_LE(double(*q), kHalfPi / 0.01);
  EXPECT_TRUE(invariant_holds(*q, {0.18, 0.19}));
}

TEST(OddMultiplier, RandomPairsSatisfyingHypotheses) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, kHalfPi);
  int tested = 0;
  while (tested < 5000) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    if (!odd_multiplier_hypotheses_hold(a, b)) continue;
    ++tested;
    ASSERT_TRUE(odd_multiplier_search(a, b).has_value()) << a << " " << b;
  }
}

TEST(OddMultiplier, WideIntervalHasNone) {
  // width 0.6 leaves no room for q >= 3; the amplitude gap exceeds the bound
  EXPECT_FALSE(odd_multiplier_hypotheses_hold(0.0, 0.6));
  EXPECT_FALSE(odd_multiplier_search(0.0, 0.6).has_value());
  EXPECT_THROW(odd_multiplier_search(0.3, 0.3), std::invalid_argument);
  EXPECT_THROW(odd_multiplier_search(-0.1, 1.7), std::invalid_argument);
}

TEST(IncreasingSum, Examples) {
  const std::vector<double> s{1, 3, 9};
  auto id = [](double x) { return x; };
  EXPECT_TRUE(increasing_sum_bound_holds(s, id, 9));
  EXPECT_TRUE(increasing_sum_bound_holds(s, id, 100));
  // A decreasing f is outside the lemma and can break the bound.
  EXPECT_FALSE(increasing_sum_bound_holds(s, [](double x) { return 1 / x; }, 27));
}

TEST(IncreasingSum, RejectsInvalidSequences) {
  auto id = [](double x) { return x; };
  EXPECT_THROW(increasing_sum_bound_holds(std::vector<double>{3, 9}, id, 9), std::invalid_argument);
  EXPECT_THROW(increasing_sum_bound_holds(std::vector<double>{1, 2}, id, 9), std::invalid_argument);
  EXPECT_THROW(increasing_sum_bound_holds(std::vector<double>{1, 3, 9}, id, 8), std::invalid_argument);
  EXPECT_THROW(increasing_sum_bound_holds(std::vector<double>{}, id, 8), std::invalid_argument);
}

TEST(Verification, AllChecksPass) {
  VerificationOptions opts;
  opts.grid_points = 20000;
  opts.trials = 2000;
  const auto checks = run_verification(opts);
  EXPECT_EQ(checks.size(), 9u);
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

}  // namespace
}  // namespace miqae::lemmas
