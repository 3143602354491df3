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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "miqae/miqae.h"

namespace {

int report_failure(miqae_status status, const char* what) {
  std::fprintf(stderr, "miqae %s: %s: %s\n", what, miqae_status_string(status),
               miqae_last_error());
  return status == MIQAE_ERR_INVALID_ARGUMENT ? 2 : 1;
}

struct OracleDeleter {
  void operator()(miqae_oracle* p) const { miqae_oracle_destroy(p); }
};
struct ResultDeleter {
  void operator()(miqae_result* p) const { miqae_result_destroy(p); }
};
struct ReportDeleter {
  void operator()(miqae_report* p) const { miqae_report_destroy(p); }
};

struct RunOptions {
  double epsilon = 1e-3;
  double alpha = 0.05;
  double amplitude = 0.5;
  std::uint64_t n_shots = 100;
  miqae_ci_method method = MIQAE_CI_CHERNOFF;
  miqae_schedule schedule = MIQAE_SCHEDULE_MODIFIED;
  std::uint64_t seed = 1;
  bool relative = false;
  double epsilon_floor = 1e-7;
  bool json = false;
};

int do_run(const RunOptions& o) {
  miqae_config config;
  miqae_config_default(&config);
  config.epsilon = o.epsilon;
  config.alpha = o.alpha;
  config.n_shots = o.n_shots;
  config.ci_method = o.method;
  config.schedule = o.schedule;

  miqae_oracle* raw_oracle = nullptr;
  if (auto s = miqae_oracle_create(o.amplitude, o.seed, &raw_oracle); s != MIQAE_OK) {
    return report_failure(s, "run");
  }
  std::unique_ptr<miqae_oracle, OracleDeleter> oracle(raw_oracle);

  miqae_result* raw_result = nullptr;
  const miqae_status s = o.relative
                             ? miqae_run_relative(&config, o.epsilon_floor, oracle.get(), &raw_result)
                             : miqae_run(&config, oracle.get(), &raw_result);
  if (s != MIQAE_OK) return report_failure(s, "run");
  std::unique_ptr<miqae_result, ResultDeleter> result(raw_result);

  if (o.json) {
    const char* json = nullptr;
    if (auto js = miqae_result_json(result.get(), &json); js != MIQAE_OK) {
      return report_failure(js, "run");
    }
    std::fputs(json, stdout);
    return 0;
  }

  miqae_summary sum;
  miqae_result_summary(result.get(), &sum);
  std::printf("a in [%.12g, %.12g]  estimate %.12g\n", sum.a_lower, sum.a_upper,
              sum.point_estimate);
  std::printf("theta in [%.12g, %.12g]\n", sum.theta_lower, sum.theta_upper);
  std::printf("queries %llu  shots %llu  rounds %u", static_cast<unsigned long long>(sum.total_queries),
              static_cast<unsigned long long>(sum.total_shots), sum.rounds);
  if (o.relative) std::printf("  relative iterations %u", sum.relative_iterations);
  std::printf("\n");
  for (size_t i = 0; i < miqae_result_round_count(result.get()); ++i) {
    miqae_round r;
    miqae_result_round(result.get(), i, &r);
    std::printf("  round %u: K=%llu shots=%llu/%llu R=%lld theta=[%.10g, %.10g]\n", r.index,
                static_cast<unsigned long long>(r.K), static_cast<unsigned long long>(r.shots_used),
                static_cast<unsigned long long>(r.n_max), static_cast<long long>(r.quadrant),
                r.theta_l, r.theta_u);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modified iterative quantum amplitude estimation, classically simulated"};
  app.require_subcommand(1);

  const std::map<std::string, miqae_ci_method> methods{{"chernoff", MIQAE_CI_CHERNOFF},
                                                       {"beta", MIQAE_CI_CLOPPER_PEARSON},
                                                       {"clopper_pearson", MIQAE_CI_CLOPPER_PEARSON}};
  const std::map<std::string, miqae_schedule> schedules{{"modified", MIQAE_SCHEDULE_MODIFIED},
                                                        {"uniform", MIQAE_SCHEDULE_UNIFORM}};

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run one estimation and print the result");
  run_cmd->add_option("--epsilon", run.epsilon, "Target half-width")->capture_default_str();
  run_cmd->add_option("--alpha", run.alpha, "Failure probability")->capture_default_str();
  run_cmd->add_option("--amplitude", run.amplitude, "Ground-truth amplitude in [0, 1]")
      ->capture_default_str();
  run_cmd->add_option("--n-shots", run.n_shots, "Shots per inner iteration")->capture_default_str();
  run_cmd->add_option("--method", run.method, "chernoff | beta")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  run_cmd->add_option("--schedule", run.schedule, "modified | uniform")
      ->transform(CLI::CheckedTransformer(schedules, CLI::ignore_case));
  run_cmd->add_option("--seed", run.seed, "Oracle seed")->capture_default_str();
  run_cmd->add_flag("--relative", run.relative, "Relative (1 +- eps) precision");
  run_cmd->add_option("--epsilon-floor", run.epsilon_floor,
                      "Abort the relative wrapper below this working precision")
      ->capture_default_str();
  run_cmd->add_flag("--json", run.json, "Print the full result as JSON");

  std::string grid_config;
  std::string grid_out;
  unsigned grid_threads = 0;
  auto* grid_cmd = app.add_subcommand("grid", "Run a parameter grid and write CSVs");
  grid_cmd->add_option("--config", grid_config, "JSON grid config")->required()->check(CLI::ExistingFile);
  grid_cmd->add_option("--out", grid_out, "Output directory")->required();
  grid_cmd->add_option("--threads", grid_threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  std::uint64_t grid_points = 100000;
  std::uint64_t trials = 10000;
  std::uint64_t verify_seed = 20230101;
  auto* verify_cmd = app.add_subcommand("verify", "Run the numerical lemma checks");
  verify_cmd->add_option("--grid-points", grid_points, "Sweep resolution")->capture_default_str();
  verify_cmd->add_option("--trials", trials, "Randomized trials per check")->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed, "Seed for randomized checks")->capture_default_str();

  std::string stats_in;
  std::string stats_out;
  auto* stats_cmd = app.add_subcommand("roundstats", "Per-k and per-round means from grid output");
  stats_cmd->add_option("--in", stats_in, "Grid output directory")->required()->check(CLI::ExistingDirectory);
  stats_cmd->add_option("--out", stats_out, "Output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) return do_run(run);

  if (*grid_cmd) {
    miqae_grid_summary summary{};
    const auto s = miqae_grid_run_file(grid_config.c_str(), grid_out.c_str(), grid_threads, &summary);
    if (s != MIQAE_OK) return report_failure(s, "grid");
    std::fprintf(stderr, "%llu cells, %llu runs, %llu failures, %llu aborted\n",
                 static_cast<unsigned long long>(summary.cells),
                 static_cast<unsigned long long>(summary.runs),
                 static_cast<unsigned long long>(summary.failures),
                 static_cast<unsigned long long>(summary.errors));
    return summary.errors == 0 ? 0 : 1;
  }

  if (*verify_cmd) {
    miqae_report* raw = nullptr;
    if (auto s = miqae_verify(grid_points, trials, verify_seed, &raw); s != MIQAE_OK) {
      return report_failure(s, "verify");
    }
    std::unique_ptr<miqae_report, ReportDeleter> report(raw);
    for (size_t i = 0; i < miqae_report_count(report.get()); ++i) {
      const char* name = nullptr;
      const char* detail = nullptr;
      int passed = 0;
      miqae_report_item(report.get(), i, &name, &passed, &detail);
      std::printf("[%s] %s: %s\n", passed ? "PASS" : "FAIL", name, detail);
    }
    return miqae_report_all_passed(report.get()) ? 0 : 1;
  }

  if (*stats_cmd) {
    size_t rows = 0;
    if (auto s = miqae_roundstats(stats_in.c_str(), stats_out.c_str(), &rows); s != MIQAE_OK) {
      return report_failure(s, "roundstats");
    }
    std::fprintf(stderr, "wrote %zu rows to %s\n", rows, stats_out.c_str());
    return 0;
  }
  return 0;
}
