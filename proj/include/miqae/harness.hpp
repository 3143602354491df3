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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "miqae/estimator.hpp"

namespace miqae::harness {

struct GridSpec {
  std::vector<double> epsilons;
  std::vector<double> amplitudes;
  double alpha = 0.05;
  std::vector<CiMethod> ci_methods;
  std::vector<AlphaSchedule> schedules{AlphaSchedule::kModified};
  std::vector<std::uint64_t> n_shots_values{100};
  std::uint64_t replications = 500;
  std::uint64_t master_seed = 1;
  bool perturb_amplitudes = true;
  double perturb_sigma = 1.0 / 320.0;

  void validate() const;
};

/// Parses a JSON grid config. Unknown keys are rejected.
GridSpec parse_grid_spec(std::string_view json_text);
GridSpec load_grid_spec(const std::filesystem::path& path);

/// `n + 1` evenly spaced amplitudes {0, 1/n, ..., 1}.
std::vector<double> amplitude_ladder(unsigned n);

struct GridCell {
  std::size_t index = 0;
  double epsilon = 0.0;
  double amplitude = 0.0;
  CiMethod method = CiMethod::kChernoff;
  AlphaSchedule schedule = AlphaSchedule::kModified;
  std::uint64_t n_shots = 1;
};

/// Cells in row-major order over (epsilon, amplitude, method, schedule, n_shots).
std::vector<GridCell> enumerate_cells(const GridSpec& spec);

struct RunRecord {
  std::uint64_t run_id = 0;
  std::size_t cell = 0;
  std::uint64_t replication = 0;
  std::uint64_t seed = 0;
  /// Amplitude actually fed to the oracle (after perturbation and clamping).
  double true_amplitude = 0.0;
  std::optional<EstimationResult> result;
  /// Non-empty when the run aborted on a contract violation.
  std::string error;

  bool aborted() const { return !result.has_value(); }
  bool failed() const {
    return result && !result->amplitude_interval.contains(true_amplitude);
  }
};

/// Executes one replication of one cell. Never throws for estimator aborts;
/// those land in RunRecord::error.
RunRecord run_replication(const GridSpec& spec, const GridCell& cell,
                          std::uint64_t replication);

struct AggregateRow {
  GridCell cell;
  double alpha = 0.0;
  std::uint64_t replications = 0;
  double mean_queries = 0.0;
  double mean_shots = 0.0;
  std::uint64_t failure_count = 0;
  double failure_frequency = 0.0;
  double mean_rounds = 0.0;
  double mean_width = 0.0;
  std::uint64_t error_count = 0;
};

/// One row per cell. Runs are reduced in run_id order, so the input order
/// does not matter.
std::vector<AggregateRow> aggregate(const GridSpec& spec,
                                    std::span<const GridCell> cells,
                                    std::span<const RunRecord> runs);

struct GridResult {
  GridSpec spec;
  std::vector<GridCell> cells;
  std::vector<RunRecord> runs;  // indexed by run_id
  std::vector<AggregateRow> rows;
};

/// Runs every (cell, replication) pair on `threads` workers (0 = hardware
/// concurrency) and aggregates.
GridResult run_grid(const GridSpec& spec, unsigned threads = 0);

/// Writes aggregate.csv, runs.csv and rounds.csv into `dir` (created if
/// missing).
void write_grid_csv(const GridResult& grid, const std::filesystem::path& dir);

/// Minimal per-run and per-round views used by the per-round report. These
/// are what runs.csv and rounds.csv carry.
struct RunSummary {
  std::uint64_t run_id = 0;
  double epsilon = 0.0;
  std::string method;
  std::string schedule;
  std::uint64_t n_shots = 0;
  bool aborted = false;
};

struct RoundObservation {
  std::uint64_t run_id = 0;
  std::uint32_t round_index = 0;
  std::uint64_t k = 0;
  std::uint64_t K = 1;
  std::uint64_t shots = 0;
  std::uint64_t queries = 0;
};

struct RoundStatRow {
  double epsilon = 0.0;
  std::string method;
  std::string schedule;
  std::uint64_t n_shots = 0;
  /// "k" rows are keyed by the Grover power k_i, "round" rows by round index.
  std::string table;
  std::uint64_t key = 0;
  std::uint64_t samples = 0;
  double mean_shots = 0.0;
  double mean_queries = 0.0;
  double mean_k = 0.0;
  /// pi / (4 eps), the reference line for K.
  double K_max = 0.0;
};

std::vector<RoundStatRow> per_round_report(std::span<const RunSummary> runs,
                                           std::span<const RoundObservation> rounds);

/// Convenience overload that extracts the views from in-memory results.
std::vector<RoundStatRow> per_round_report(const GridResult& grid);

/// Reads runs.csv and rounds.csv from a grid output directory.
std::vector<RoundStatRow> per_round_report(const std::filesystem::path& runs_dir);

void write_round_stats_csv(std::span<const RoundStatRow> rows,
                           const std::filesystem::path& path);

/// Locale-independent formatting with 17 significant digits.
std::string format_double(double value);

}  // namespace miqae::harness
