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
#include <string>

#include "miqae/estimator.hpp"

namespace miqae {

/// Oracle parameters echoed into serialized results.
struct RunContext {
  double amplitude = 0.0;
  std::uint64_t seed = 0;
};

/// Pretty-printed JSON with the config, final intervals, totals and every
/// round record. Output is a pure function of the inputs.
std::string to_json(const EstimationResult& result, const RunContext& context);
std::string to_json(const RelativeResult& result, const RunContext& context);

}  // namespace miqae
