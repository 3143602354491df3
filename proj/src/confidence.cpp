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

#include "miqae/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "miqae/error.hpp"

namespace miqae {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("confidence level alpha must lie in (0, 1), got " +
                                std::to_string(alpha));
  }
}

void check_sample(const BinomialSample& sample) {
  if (sample.trials == 0) throw std::invalid_argument("binomial sample needs trials >= 1");
  if (sample.successes > sample.trials) {
    throw std::invalid_argument("binomial sample has more successes than trials");
  }
}

// glibc's lgamma writes the global signgam; lgamma_r does not.
double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double x, double a, double b) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge");
}

}  // namespace

std::string_view to_string(CiMethod method) {
  return method == CiMethod::kChernoff ? "chernoff" : "beta";
}

CiMethod parse_ci_method(std::string_view name) {
  if (name == "chernoff") return CiMethod::kChernoff;
  if (name == "beta" || name == "clopper_pearson") return CiMethod::kClopperPearson;
  throw std::invalid_argument("unknown confidence interval method '" + std::string(name) + "'");
}

double chernoff_halfwidth(std::uint64_t trials, double alpha) {
  if (trials == 0) throw std::invalid_argument("chernoff_halfwidth needs trials >= 1");
  check_alpha(alpha);
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(trials)));
}

AmplitudeCI chernoff_interval(const BinomialSample& sample, double alpha) {
  check_sample(sample);
  const double p_hat = sample.proportion();
  const double eps = chernoff_halfwidth(sample.trials, alpha);
  return {std::max(0.0, p_hat - eps), std::min(1.0, p_hat + eps), alpha};
}

AmplitudeCI clopper_pearson_interval(const BinomialSample& sample, double alpha) {
  check_sample(sample);
  check_alpha(alpha);
  const auto n = static_cast<double>(sample.successes);
  const auto total = static_cast<double>(sample.trials);
  AmplitudeCI ci{0.0, 1.0, alpha};
  if (sample.successes > 0) {
    ci.a_min = beta_math::beta_quantile(alpha / 2.0, n, total - n + 1.0);
  }
  if (sample.successes < sample.trials) {
    ci.a_max = beta_math::beta_quantile(1.0 - alpha / 2.0, n + 1.0, total - n);
  }
  // Bisection tolerance can leave the bounds a hair on the wrong side of n/N.
  const double p_hat = sample.proportion();
  ci.a_min = std::min(ci.a_min, p_hat);
  ci.a_max = std::max(ci.a_max, p_hat);
  return ci;
}

AmplitudeCI amplitude_interval(CiMethod method, const BinomialSample& sample, double alpha) {
  return method == CiMethod::kChernoff ? chernoff_interval(sample, alpha)
                                       : clopper_pearson_interval(sample, alpha);
}

namespace beta_math {

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("beta parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The fraction converges fastest on the side of the mean.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(x, a, b) / a;
  }
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double beta_quantile(double p, double a, double b) {
  constexpr double kTolerance = 1e-12;
  constexpr int kMaxIterations = 200;
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level must lie in [0, 1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < kMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (regularized_incomplete_beta(mid, a, b) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= kTolerance) return 0.5 * (lo + hi);
  }
  throw NumericalError("beta quantile bisection hit its iteration cap");
}

}  // namespace beta_math
}  // namespace miqae
