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
#include <string_view>

namespace miqae {

struct BinomialSample {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;

  double proportion() const {
    return static_cast<double>(successes) / static_cast<double>(trials);
  }
};

/// Confidence interval [a_min, a_max] for a Bernoulli success probability,
/// valid with failure probability at most level_alpha.
struct AmplitudeCI {
  double a_min = 0.0;
  double a_max = 1.0;
  double level_alpha = 0.0;

  double width() const { return a_max - a_min; }
};

enum class CiMethod { kChernoff, kClopperPearson };

std::string_view to_string(CiMethod method);
/// Accepts "chernoff", "beta" and "clopper_pearson".
CiMethod parse_ci_method(std::string_view name);

/// Hoeffding half-width sqrt(ln(2/alpha) / (2N)).
double chernoff_halfwidth(std::uint64_t trials, double alpha);

AmplitudeCI chernoff_interval(const BinomialSample& sample, double alpha);

/// Equal-tailed exact binomial interval from Beta quantiles.
AmplitudeCI clopper_pearson_interval(const BinomialSample& sample, double alpha);

AmplitudeCI amplitude_interval(CiMethod method, const BinomialSample& sample,
                               double alpha);

// Numerics behind the Clopper-Pearson interval. Exposed for testing.
namespace beta_math {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double x, double a, double b);

/// Smallest x with I_x(a, b) >= p, by bisection to 1e-12 absolute.
/// Throws NumericalError if the 200-iteration cap is reached.
double beta_quantile(double p, double a, double b);

}  // namespace beta_math

}  // namespace miqae
