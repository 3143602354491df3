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

#include "miqae/serialize.hpp"

#include <cmath>

#include "json.hpp"

namespace miqae {
namespace {

using nlohmann::ordered_json;

ordered_json interval(double lo, double hi) { return ordered_json::array({lo, hi}); }

ordered_json result_body(const EstimationResult& r, const RunContext& ctx) {
  ordered_json j;
  j["config"] = {{"epsilon", r.config.epsilon},
                 {"alpha", r.config.alpha},
                 {"n_shots", r.config.n_shots},
                 {"method", std::string(to_string(r.config.ci_method))},
                 {"schedule", std::string(to_string(r.config.schedule))}};
  j["oracle"] = {{"amplitude", ctx.amplitude},
                 {"theta", std::asin(std::sqrt(ctx.amplitude))},
                 {"seed", ctx.seed},
                 {"sampling", "per_shot"}};
  j["amplitude_interval"] = interval(r.amplitude_interval.lower, r.amplitude_interval.upper);
  j["theta_interval"] = interval(r.theta_interval.lower, r.theta_interval.upper);
  j["point_estimate"] = r.point_estimate;
  j["total_queries"] = r.total_queries;
  j["total_a_applications"] = r.total_a_applications;
  j["total_shots"] = r.total_shots;
  j["alpha_spent"] = r.alpha_spent;
  j["termination"] = "width_reached";
  ordered_json rounds = ordered_json::array();
  for (const RoundRecord& rr : r.rounds) {
    rounds.push_back({{"index", rr.index},
                      {"k", rr.k},
                      {"K", rr.K},
                      {"alpha_i", rr.alpha_i},
                      {"n_max", rr.n_max},
                      {"quadrant", rr.quadrant},
                      {"shots_used", rr.shots_used},
                      {"ones_observed", rr.ones_observed},
                      {"theta_before", interval(rr.interval_before.lower, rr.interval_before.upper)},
                      {"theta_after", interval(rr.interval_after.lower, rr.interval_after.upper)},
                      {"queries", rr.queries}});
  }
  j["rounds"] = std::move(rounds);
  return j;
}

}  // namespace

std::string to_json(const EstimationResult& result, const RunContext& context) {
  return result_body(result, context).dump(2) + "\n";
}

std::string to_json(const RelativeResult& result, const RunContext& context) {
  ordered_json j = result_body(result.last, context);
  j["termination"] = "relative_width_reached";
  j["relative"] = {{"estimate", result.estimate()},
                   {"iterations", result.iterations},
                   {"epsilons", result.epsilons},
                   {"total_queries", result.total_queries},
                   {"total_a_applications", result.total_a_applications},
                   {"total_shots", result.total_shots}};
  return j.dump(2) + "\n";
}

}  // namespace miqae
