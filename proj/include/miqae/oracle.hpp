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

#include "miqae/rng.hpp"

namespace miqae {

/// How measure() draws its outcome count.
///
/// kPerShot draws one uniform per shot and compares it with p, so the
/// sequence of engine outputs is fixed by (seed, total shots). kBinomial uses
/// std::binomial_distribution, which is faster for large m but whose output
/// depends on the standard library implementation.
enum class SamplingMode { kPerShot, kBinomial };

/// Classical stand-in for measuring the last qubit of Q^k A|0>|0>.
///
/// The outcome |1> occurs with probability sin^2((2k+1) theta_a) where
/// sin^2(theta_a) = a. The oracle counts applications of Q (k per shot) and,
/// separately, applications of A (2k+1 per shot).
class SimulatedOracle {
 public:
  SimulatedOracle(double amplitude, std::uint64_t seed,
                  SamplingMode mode = SamplingMode::kPerShot);

  /// Takes m shots of the depth-k circuit and returns the number of ones.
  std::uint64_t measure(std::uint64_t k, std::uint64_t m);

  /// Outcome probability for Grover power k.
  double success_probability(std::uint64_t k) const;

  double amplitude() const { return amplitude_; }
  double theta() const { return theta_; }
  std::uint64_t seed() const { return seed_; }
  SamplingMode mode() const { return mode_; }

  std::uint64_t queries() const { return queries_; }
  std::uint64_t a_applications() const { return a_applications_; }
  std::uint64_t shots() const { return shots_; }

 private:
  double amplitude_;
  double theta_;
  std::uint64_t seed_;
  SamplingMode mode_;
  Engine engine_;
  std::uint64_t queries_ = 0;
  std::uint64_t a_applications_ = 0;
  std::uint64_t shots_ = 0;
};

}  // namespace miqae
