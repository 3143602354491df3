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

#include "miqae/miqae.h"

#include <filesystem>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "miqae/error.hpp"
#include "miqae/estimator.hpp"
#include "miqae/harness.hpp"
#include "miqae/lemmas.hpp"
#include "miqae/oracle.hpp"
#include "miqae/serialize.hpp"

struct miqae_oracle {
  miqae::SimulatedOracle impl;
};

struct miqae_result {
  miqae::EstimationResult absolute;
  std::optional<miqae::RelativeResult> relative;
  miqae::RunContext context;
  std::string json;
};

struct miqae_report {
  std::vector<miqae::lemmas::CheckResult> checks;
};

namespace {

thread_local std::string g_last_error;

miqae_status fail(miqae_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps the core's exceptions onto status codes.
template <typename Fn>
miqae_status guarded(Fn&& fn) {
  try {
    fn();
    return MIQAE_OK;
  } catch (const miqae::ContractViolation& e) {
    return fail(MIQAE_ERR_CONTRACT_VIOLATION, e.what());
  } catch (const miqae::NumericalError& e) {
    return fail(MIQAE_ERR_NUMERICAL, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(MIQAE_ERR_INVALID_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(MIQAE_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(MIQAE_ERR_IO, e.what());
  } catch (const std::runtime_error& e) {
    return fail(MIQAE_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MIQAE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MIQAE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MIQAE_ERR_INTERNAL, "unknown error");
  }
}

miqae::EstimatorConfig to_core(const miqae_config& c) {
  if (c.ci_method != MIQAE_CI_CHERNOFF && c.ci_method != MIQAE_CI_CLOPPER_PEARSON) {
    throw std::invalid_argument("unknown ci_method");
  }
  if (c.schedule != MIQAE_SCHEDULE_MODIFIED && c.schedule != MIQAE_SCHEDULE_UNIFORM) {
    throw std::invalid_argument("unknown schedule");
  }
  miqae::EstimatorConfig out;
  out.epsilon = c.epsilon;
  out.alpha = c.alpha;
  out.n_shots = c.n_shots;
  out.ci_method = c.ci_method == MIQAE_CI_CHERNOFF ? miqae::CiMethod::kChernoff
                                                   : miqae::CiMethod::kClopperPearson;
  out.schedule = c.schedule == MIQAE_SCHEDULE_MODIFIED ? miqae::AlphaSchedule::kModified
                                                       : miqae::AlphaSchedule::kUniform;
  return out;
}

template <typename T>
void require(const T* p, const char* what) {
  if (p == nullptr) throw std::invalid_argument(std::string(what) + " must not be null");
}

miqae_grid_summary summarize(const miqae::harness::GridResult& grid) {
  miqae_grid_summary s{grid.cells.size(), grid.runs.size(), 0, 0};
  for (const auto& r : grid.runs) {
    if (r.aborted()) ++s.errors;
    if (r.failed()) ++s.failures;
  }
  return s;
}

}  // namespace

extern "C" {

int miqae_api_version(void) { return MIQAE_API_VERSION; }

const char* miqae_last_error(void) { return g_last_error.c_str(); }

const char* miqae_status_string(miqae_status status) {
  switch (status) {
    case MIQAE_OK: return "ok";
    case MIQAE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MIQAE_ERR_CONTRACT_VIOLATION: return "contract violation";
    case MIQAE_ERR_NUMERICAL: return "numerical error";
    case MIQAE_ERR_IO: return "i/o error";
    case MIQAE_ERR_OUT_OF_RANGE: return "index out of range";
    case MIQAE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void miqae_config_default(miqae_config* config) {
  if (config == nullptr) return;
  *config = {1e-3, 0.05, 100, MIQAE_CI_CHERNOFF, MIQAE_SCHEDULE_MODIFIED};
}

miqae_status miqae_oracle_create(double amplitude, uint64_t seed, miqae_oracle** out) {
  return guarded([&] {
    require(out, "out");
    *out = new miqae_oracle{miqae::SimulatedOracle(amplitude, seed)};
  });
}

void miqae_oracle_destroy(miqae_oracle* oracle) { delete oracle; }

miqae_status miqae_oracle_measure(miqae_oracle* oracle, uint64_t k, uint64_t shots,
                                  uint64_t* ones) {
  return guarded([&] {
    require(oracle, "oracle");
    require(ones, "ones");
    *ones = oracle->impl.measure(k, shots);
  });
}

miqae_status miqae_oracle_counters(const miqae_oracle* oracle, uint64_t* queries,
                                   uint64_t* a_applications, uint64_t* shots) {
  return guarded([&] {
    require(oracle, "oracle");
    if (queries) *queries = oracle->impl.queries();
    if (a_applications) *a_applications = oracle->impl.a_applications();
    if (shots) *shots = oracle->impl.shots();
  });
}

miqae_status miqae_run(const miqae_config* config, miqae_oracle* oracle, miqae_result** out) {
  return guarded([&] {
    require(config, "config");
    require(oracle, "oracle");
    require(out, "out");
    auto result = miqae::run_modified_iqae(to_core(*config), oracle->impl);
    *out = new miqae_result{std::move(result), std::nullopt,
                            {oracle->impl.amplitude(), oracle->impl.seed()}, {}};
  });
}

miqae_status miqae_run_relative(const miqae_config* config, double epsilon_floor,
                                miqae_oracle* oracle, miqae_result** out) {
  return guarded([&] {
    require(config, "config");
    require(oracle, "oracle");
    require(out, "out");
    auto rel = miqae::run_relative_iqae(to_core(*config), oracle->impl, epsilon_floor);
    auto last = rel.last;
    *out = new miqae_result{std::move(last), std::move(rel),
                            {oracle->impl.amplitude(), oracle->impl.seed()}, {}};
  });
}

void miqae_result_destroy(miqae_result* result) { delete result; }

miqae_status miqae_result_summary(const miqae_result* result, miqae_summary* out) {
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    const auto& r = result->absolute;
    *out = {r.amplitude_interval.lower,
            r.amplitude_interval.upper,
            r.theta_interval.lower,
            r.theta_interval.upper,
            r.point_estimate,
            r.total_queries,
            r.total_a_applications,
            r.total_shots,
            r.alpha_spent,
            static_cast<uint32_t>(r.rounds.size()),
            0};
    if (result->relative) {
      out->point_estimate = result->relative->estimate();
      out->total_queries = result->relative->total_queries;
      out->total_a_applications = result->relative->total_a_applications;
      out->total_shots = result->relative->total_shots;
      out->relative_iterations = result->relative->iterations;
    }
  });
}

size_t miqae_result_round_count(const miqae_result* result) {
  return result == nullptr ? 0 : result->absolute.rounds.size();
}

miqae_status miqae_result_round(const miqae_result* result, size_t index, miqae_round* out) {
  if (result != nullptr && index >= result->absolute.rounds.size()) {
    return fail(MIQAE_ERR_OUT_OF_RANGE, "round index " + std::to_string(index) + " out of range");
  }
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    const auto& r = result->absolute.rounds[index];
    *out = {r.index,
            r.k,
            r.K,
            r.alpha_i,
            r.n_max,
            r.quadrant,
            r.shots_used,
            r.ones_observed,
            r.interval_before.lower,
            r.interval_before.upper,
            r.interval_after.lower,
            r.interval_after.upper,
            r.queries};
  });
}

miqae_status miqae_result_json(miqae_result* result, const char** json) {
  return guarded([&] {
    require(result, "result");
    require(json, "json");
    if (result->json.empty()) {
      result->json = result->relative ? miqae::to_json(*result->relative, result->context)
                                      : miqae::to_json(result->absolute, result->context);
    }
    *json = result->json.c_str();
  });
}

miqae_status miqae_grid_run(const char* config_json, const char* out_dir, unsigned threads,
                            miqae_grid_summary* summary) {
  return guarded([&] {
    require(config_json, "config_json");
    require(out_dir, "out_dir");
    const auto spec = miqae::harness::parse_grid_spec(config_json);
    const auto grid = miqae::harness::run_grid(spec, threads);
    miqae::harness::write_grid_csv(grid, out_dir);
    if (summary) *summary = summarize(grid);
  });
}

miqae_status miqae_grid_run_file(const char* config_path, const char* out_dir, unsigned threads,
                                 miqae_grid_summary* summary) {
  return guarded([&] {
    require(config_path, "config_path");
    require(out_dir, "out_dir");
    const auto spec = miqae::harness::load_grid_spec(config_path);
    const auto grid = miqae::harness::run_grid(spec, threads);
    miqae::harness::write_grid_csv(grid, out_dir);
    if (summary) *summary = summarize(grid);
  });
}

miqae_status miqae_roundstats(const char* runs_dir, const char* out_path, size_t* rows_written) {
  return guarded([&] {
    require(runs_dir, "runs_dir");
    require(out_path, "out_path");
    const auto rows = miqae::harness::per_round_report(std::filesystem::path(runs_dir));
    miqae::harness::write_round_stats_csv(rows, out_path);
    if (rows_written) *rows_written = rows.size();
  });
}

miqae_status miqae_verify(uint64_t grid_points, uint64_t trials, uint64_t seed,
                          miqae_report** out) {
  return guarded([&] {
    require(out, "out");
    miqae::lemmas::VerificationOptions options;
    options.grid_points = grid_points;
    options.trials = trials;
    options.seed = seed;
    *out = new miqae_report{miqae::lemmas::run_verification(options)};
  });
}

void miqae_report_destroy(miqae_report* report) { delete report; }

size_t miqae_report_count(const miqae_report* report) {
  return report == nullptr ? 0 : report->checks.size();
}

miqae_status miqae_report_item(const miqae_report* report, size_t index, const char** name,
                               int* passed, const char** detail) {
  if (report != nullptr && index >= report->checks.size()) {
    return fail(MIQAE_ERR_OUT_OF_RANGE, "report index " + std::to_string(index) + " out of range");
  }
  return guarded([&] {
    require(report, "report");
    const auto& c = report->checks[index];
    if (name) *name = c.name.c_str();
    if (passed) *passed = c.passed ? 1 : 0;
    if (detail) *detail = c.detail.c_str();
  });
}

int miqae_report_all_passed(const miqae_report* report) {
  if (report == nullptr) return 0;
  for (const auto& c : report->checks) {
    if (!c.passed) return 0;
  }
  return 1;
}

}  // extern "C"
