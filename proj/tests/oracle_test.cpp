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

#include "miqae/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace miqae {
namespace {

TEST(SimulatedOracle, RejectsAmplitudeOutsideUnitInterval) {
  EXPECT_THROW(SimulatedOracle(-0.1, 1), std::invalid_argument);
  EXPECT_THROW(SimulatedOracle(1.1, 1), std::invalid_argument);
  EXPECT_THROW(SimulatedOracle(std::numeric_limits<double>::quiet_NaN(), 1),
               std::invalid_argument);
}

TEST(SimulatedOracle, AngleMatchesAmplitude) {
  EXPECT_DOUBLE_EQ(SimulatedOracle(0.0, 1).theta(), 0.0);
  EXPECT_DOUBLE_EQ(SimulatedOracle(1.0, 1).theta(), std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(SimulatedOracle(0.5, 1).theta(), std::numbers::pi / 4);
}

TEST(SimulatedOracle, DegenerateAmplitudesAreDeterministic) {
  SimulatedOracle zero(0.0, 3);
  for (std::uint64_t k : {0u, 1u, 7u, 40u}) EXPECT_EQ(zero.measure(k, 100), 0u);
  SimulatedOracle one(1.0, 3);
  // sin^2(7 * pi/2) = 1
  EXPECT_EQ(one.measure(3, 50), 50u);
  EXPECT_EQ(one.measure(0, 20), 20u);
}

TEST(SimulatedOracle, SuccessProbabilityFollowsRotation) {
  SimulatedOracle o(0.5, 1);
  EXPECT_NEAR(o.success_probability(0), 0.5, 1e-15);
  EXPECT_NEAR(o.success_probability(1), 0.5, 1e-15);
  SimulatedOracle q(0.25, 1);
  // theta = pi/6, 3 theta = pi/2
  EXPECT_NEAR(q.success_probability(1), 1.0, 1e-15);
  EXPECT_NEAR(q.success_probability(2), 0.25, 1e-15);
}

TEST(SimulatedOracle, RejectsEmptyBatch) {
  SimulatedOracle o(0.3, 1);
  EXPECT_THROW(o.measure(1, 0), std::invalid_argument);
}

TEST(SimulatedOracle, CountsQueriesAndApplications) {
  SimulatedOracle o(0.37, 11);
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> calls = {
      {0, 100}, {1, 37}, {4, 12}, {13, 100}, {121, 5}, {0, 1}};
  std::uint64_t q = 0, a = 0, s = 0;
  for (auto [k, m] : calls) {
    const auto ones = o.measure(k, m);
    EXPECT_LE(ones, m);
    q += k * m;
    a += (2 * k + 1) * m;
    s += m;
    EXPECT_EQ(o.queries(), q);
    EXPECT_EQ(o.a_applications(), a);
    EXPECT_EQ(o.shots(), s);
  }
}

TEST(SimulatedOracle, SameSeedReplaysSameOutcomes) {
  for (auto mode : {SamplingMode::kPerShot, SamplingMode::kBinomial}) {
    SimulatedOracle a(0.42, 99, mode), b(0.42, 99, mode), c(0.42, 100, mode);
    std::vector<std::uint64_t> ra, rb, rc;
    for (std::uint64_t k = 0; k < 20; ++k) {
      ra.push_back(a.measure(k, 64));
      rb.push_back(b.measure(k, 64));
      rc.push_back(c.measure(k, 64));
    }
    EXPECT_EQ(ra, rb);
    EXPECT_NE(ra, rc);
  }
}

class OracleFrequency : public ::testing::TestWithParam<SamplingMode> {};

TEST_P(OracleFrequency, EmpiricalRateConverges) {
  constexpr std::uint64_t kShots = 200000;
  for (double a : {0.05, 0.3, 0.77}) {
    for (std::uint64_t k : {0u, 2u, 9u}) {
      SimulatedOracle o(a, 5 + k, GetParam());
      const double p = o.success_probability(k);
      const double freq = static_cast<double>(o.measure(k, kShots)) / kShots;
      const double se = std::sqrt(p * (1 - p) / kShots);
      EXPECT_NEAR(freq, p, 5 * se + 1e-12) << "a=" << a << " k=" << k;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Modes, OracleFrequency,
                         ::testing::Values(SamplingMode::kPerShot,
                                           SamplingMode::kBinomial));

TEST(Rng, DerivedSeedsSeparateStreams) {
  EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(2, {2, 3}));
  Engine e(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(e);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, StandardNormalMoments) {
  Engine e(2024);
  constexpr int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = standard_normal(e);
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.015);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

}  // namespace
}  // namespace miqae
