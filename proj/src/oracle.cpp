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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace miqae {

double standard_normal(Engine& eng) {
  // 1 - u keeps the logarithm finite.
  const double u1 = 1.0 - uniform01(eng);
  const double u2 = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SimulatedOracle::SimulatedOracle(double amplitude, std::uint64_t seed, SamplingMode mode)
    : amplitude_(amplitude), seed_(seed), mode_(mode), engine_(seed) {
  if (!(amplitude >= 0.0 && amplitude <= 1.0)) {
    throw std::invalid_argument("amplitude must lie in [0, 1], got " +
                                std::to_string(amplitude));
  }
  theta_ = std::asin(std::sqrt(amplitude));
}

double SimulatedOracle::success_probability(std::uint64_t k) const {
  const double s = std::sin(static_cast<double>(2 * k + 1) * theta_);
  return std::clamp(s * s, 0.0, 1.0);
}

std::uint64_t SimulatedOracle::measure(std::uint64_t k, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("measure requires at least one shot");
  const double p = success_probability(k);
  std::uint64_t ones = 0;
  if (mode_ == SamplingMode::kPerShot) {
    for (std::uint64_t i = 0; i < m; ++i) {
      if (uniform01(engine_) < p) ++ones;
    }
  } else {
    std::binomial_distribution<std::uint64_t> dist(m, p);
    ones = dist(engine_);
  }
  queries_ += k * m;
  a_applications_ += (2 * k + 1) * m;
  shots_ += m;
  return ones;
}

}  // namespace miqae
