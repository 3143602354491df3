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

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "miqae/error.hpp"
#include "miqae/lemmas.hpp"
#include "run_checks.hpp"

namespace miqae {
namespace {

using testing::query_bound;
using testing::structural_problem;

EstimatorConfig make(double eps, CiMethod m = CiMethod::kChernoff,
                     AlphaSchedule s = AlphaSchedule::kModified, std::uint64_t shots = 100) {
  EstimatorConfig c;
  c.epsilon = eps;
  c.alpha = 0.05;
  c.n_shots = shots;
  c.ci_method = m;
  c.schedule = s;
  return c;
}

TEST(Config, Validation) {
  EXPECT_NO_THROW(make(1e-3).validate());
  EXPECT_THROW(make(0.0).validate(), std::invalid_argument);
  EXPECT_THROW(make(0.8).validate(), std::invalid_argument);
  auto c = make(1e-2);
  c.alpha = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = make(1e-2);
  c.n_shots = 0;
  SimulatedOracle o(0.3, 1);
  EXPECT_THROW(run_modified_iqae(c, o), std::invalid_argument);
}

TEST(QueryBound, FrozenValues) {
  EXPECT_NEAR(query_bound(1e-2, 0.05), 28421.06, 0.01);
  EXPECT_NEAR(query_bound(1e-3, 0.05), 284210.57, 0.01);
  EXPECT_NEAR(query_bound(1e-4, 0.05), 2842105.72, 0.01);
}

TEST(Estimator, DegenerateAmplitudes) {
  for (auto m : {CiMethod::kChernoff, CiMethod::kClopperPearson}) {
    SimulatedOracle zero(0.0, 3);
    auto r0 = run_modified_iqae(make(1e-2, m), zero);
    EXPECT_TRUE(r0.amplitude_interval.contains(0.0));
    EXPECT_LT(r0.amplitude_interval.width(), 2e-2);
    EXPECT_EQ(structural_problem(r0), "");
    SimulatedOracle one(1.0, 3);
    auto r1 = run_modified_iqae(make(1e-2, m), one);
    EXPECT_TRUE(r1.amplitude_interval.contains(1.0));
    EXPECT_EQ(structural_problem(r1), "");
  }
}

TEST(Estimator, FrozenSmokeRun) {
  SimulatedOracle o(0.3, 7);
  auto r = run_modified_iqae(make(1e-3), o);
  EXPECT_TRUE(r.amplitude_interval.contains(0.3));
  EXPECT_EQ(r.rounds.front().K, 1u);
  EXPECT_EQ(r.rounds.front().n_max, 1119u);
  EXPECT_NEAR(r.rounds.front().alpha_i, 4.244131815783876e-5, 1e-18);
  EXPECT_EQ(r.total_queries, o.queries());
  EXPECT_EQ(r.total_shots, o.shots());
}

TEST(Estimator, DeterministicForSeed) {
  auto once = [](std::uint64_t seed) {
    SimulatedOracle o(0.61, seed);
    return run_modified_iqae(make(1e-3, CiMethod::kClopperPearson), o);
  };
  auto a = once(42), b = once(42);
  EXPECT_EQ(a.total_queries, b.total_queries);
  EXPECT_EQ(a.amplitude_interval.lower, b.amplitude_interval.lower);
  EXPECT_EQ(a.amplitude_interval.upper, b.amplitude_interval.upper);
  ASSERT_EQ(a.rounds.size(), b.rounds.size());
  for (std::size_t i = 0; i < a.rounds.size(); ++i) {
    EXPECT_EQ(a.rounds[i].ones_observed, b.rounds[i].ones_observed);
  }
}

TEST(Estimator, CountersAreRunLocal) {
  SimulatedOracle o(0.2, 5);
  o.measure(4, 10);
  auto r = run_modified_iqae(make(1e-2), o);
  EXPECT_EQ(r.total_queries + 40, o.queries());
  EXPECT_EQ(structural_problem(r), "");
}

struct Sweep {
  CiMethod method;
  AlphaSchedule schedule;
  std::uint64_t shots;
};

class EstimatorSweep : public ::testing::TestWithParam<Sweep> {};

TEST_P(EstimatorSweep, StructureAndQueryBound) {
  const auto p = GetParam();
  std::uint64_t seed = 1;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    for (int j = 0; j <= 16; ++j) {
      const double a = j / 16.0;
      for (int rep = 0; rep < 4; ++rep) {
        SimulatedOracle o(a, seed++);
        auto r = run_modified_iqae(make(eps, p.method, p.schedule, p.shots), o);
        ASSERT_EQ(structural_problem(r), "") << "eps=" << eps << " a=" << a;
        ASSERT_LE(double(r.total_queries), query_bound(eps, 0.05));
        // The increasing-sum bound applies to the multipliers the run used.
        std::vector<double> ks;
        for (const auto& rd : r.rounds) ks.push_back(double(rd.K));
        if (ks.size() > 1) {
          const double km = k_max(eps);
          ASSERT_TRUE(lemmas::increasing_sum_bound_holds(ks, [](double x) { return x; }, km));
          ASSERT_TRUE(lemmas::increasing_sum_bound_holds(
              ks, [km](double x) { return x * std::log(3 * km / 0.05 / x); }, km));
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Variants, EstimatorSweep,
    ::testing::Values(Sweep{CiMethod::kChernoff, AlphaSchedule::kModified, 100},
                      Sweep{CiMethod::kClopperPearson, AlphaSchedule::kModified, 100},
                      Sweep{CiMethod::kChernoff, AlphaSchedule::kUniform, 100},
                      Sweep{CiMethod::kChernoff, AlphaSchedule::kModified, 1},
                      Sweep{CiMethod::kClopperPearson, AlphaSchedule::kModified, 7}));

TEST(Estimator, CoverageAtModerateSample) {
  int misses = 0;
  for (int rep = 0; rep < 500; ++rep) {
    SimulatedOracle o(0.3, derive_seed(99, {std::uint64_t(rep)}));
    auto r = run_modified_iqae(make(1e-3), o);
    misses += !r.amplitude_interval.contains(0.3);
  }
  EXPECT_LE(misses / 500.0, 0.05 + 3 * std::sqrt(0.05 * 0.95 / 500));
}

TEST(Relative, ReachesRelativePrecision) {
  for (double a : {0.1, 0.5, 0.9}) {
    SimulatedOracle o(a, 3);
    auto c = make(0.1);
    auto r = run_relative_iqae(c, o);
    const auto& iv = r.last.amplitude_interval;
    EXPECT_LE(iv.width(), 2 * r.estimate() * 0.1);
    ASSERT_EQ(r.epsilons.size(), r.iterations);
    for (std::size_t i = 0; i < r.epsilons.size(); ++i) {
      EXPECT_DOUBLE_EQ(r.epsilons[i], 0.1 / std::pow(2.0, double(i + 1)));
    }
    EXPECT_EQ(r.total_queries, o.queries());
  }
}

TEST(Relative, ZeroAmplitudeHitsFloor) {
  SimulatedOracle o(0.0, 3);
  EXPECT_THROW(run_relative_iqae(make(0.1), o, 1e-4), ContractViolation);
  EXPECT_THROW(run_relative_iqae(make(0.1), o, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace miqae
