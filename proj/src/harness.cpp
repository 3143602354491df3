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

#include "miqae/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "json.hpp"

#include "miqae/error.hpp"
#include "miqae/rng.hpp"

namespace miqae::harness {
namespace {

using nlohmann::json;

// Substream tags under (master, cell, replication).
constexpr std::uint64_t kPerturbStream = 1;
constexpr std::uint64_t kOracleStream = 2;

template <typename T>
std::vector<T> nonempty_array(const json& j, const char* key) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument(std::string("grid config: '") + key + "' must be a non-empty array");
  }
  return j.get<std::vector<T>>();
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

std::string csv_safe(std::string text) {
  std::replace_if(text.begin(), text.end(),
                  [](char c) { return c == ',' || c == '\n' || c == '\r' || c == '"'; }, ';');
  return text;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

// Column-name-addressed reader for the CSVs this module writes.
class CsvTable {
 public:
  explicit CsvTable(const std::filesystem::path& path) : path_(path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + " is empty");
    const auto header = split_csv_line(line);
    for (std::size_t i = 0; i < header.size(); ++i) columns_[header[i]] = i;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      rows_.push_back(split_csv_line(line));
      if (rows_.back().size() != header.size()) {
        throw std::runtime_error(path.string() + ": row " + std::to_string(rows_.size()) +
                                 " has " + std::to_string(rows_.back().size()) +
                                 " fields, expected " + std::to_string(header.size()));
      }
    }
  }

  std::size_t column(const std::string& name) const {
    const auto it = columns_.find(name);
    if (it == columns_.end()) {
      throw std::runtime_error(path_.string() + " has no column '" + name + "'");
    }
    return it->second;
  }

  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

 private:
  std::filesystem::path path_;
  std::unordered_map<std::string, std::size_t> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::uint64_t to_u64(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("expected an unsigned integer, got '" + s + "'");
  }
  return v;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("expected a number, got '" + s + "'");
  }
  return v;
}

double mean_or_nan(double sum, std::uint64_t n) {
  return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(n);
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void GridSpec::validate() const {
  if (epsilons.empty() || amplitudes.empty() || ci_methods.empty() || schedules.empty() ||
      n_shots_values.empty()) {
    throw std::invalid_argument("grid spec lists must be non-empty");
  }
  if (replications == 0) throw std::invalid_argument("replications must be at least 1");
  for (double a : amplitudes) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("grid amplitudes must lie in [0, 1]");
  }
  for (double e : epsilons) {
    EstimatorConfig probe;
    probe.epsilon = e;
    probe.alpha = alpha;
    probe.validate();
  }
  for (auto n : n_shots_values) {
    if (n == 0) throw std::invalid_argument("n_shots values must be at least 1");
  }
  if (perturb_amplitudes && !(perturb_sigma >= 0.0)) {
    throw std::invalid_argument("perturb_sigma must be non-negative");
  }
}

std::vector<double> amplitude_ladder(unsigned n) {
  if (n == 0) throw std::invalid_argument("amplitude ladder needs at least one step");
  std::vector<double> out;
  for (unsigned i = 0; i <= n; ++i) out.push_back(static_cast<double>(i) / n);
  return out;
}

GridSpec parse_grid_spec(std::string_view json_text) {
  const json j = json::parse(json_text);
  if (!j.is_object()) throw std::invalid_argument("grid config must be a JSON object");
  GridSpec spec;
  spec.ci_methods.clear();
  bool have_amplitudes = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "epsilons") {
      spec.epsilons = nonempty_array<double>(value, "epsilons");
    } else if (key == "amplitudes") {
      spec.amplitudes = nonempty_array<double>(value, "amplitudes");
      have_amplitudes = true;
    } else if (key == "amplitude_steps") {
      spec.amplitudes = amplitude_ladder(value.get<unsigned>());
      have_amplitudes = true;
    } else if (key == "alpha") {
      spec.alpha = value.get<double>();
    } else if (key == "ci_methods") {
      for (const auto& name : nonempty_array<std::string>(value, "ci_methods")) {
        spec.ci_methods.push_back(parse_ci_method(name));
      }
    } else if (key == "schedules") {
      spec.schedules.clear();
      for (const auto& name : nonempty_array<std::string>(value, "schedules")) {
        spec.schedules.push_back(parse_alpha_schedule(name));
      }
    } else if (key == "n_shots") {
      spec.n_shots_values = nonempty_array<std::uint64_t>(value, "n_shots");
    } else if (key == "replications") {
      spec.replications = value.get<std::uint64_t>();
    } else if (key == "master_seed") {
      spec.master_seed = value.get<std::uint64_t>();
    } else if (key == "perturb_amplitudes") {
      spec.perturb_amplitudes = value.get<bool>();
    } else if (key == "perturb_sigma") {
      spec.perturb_sigma = value.get<double>();
    } else {
      throw std::invalid_argument("grid config: unknown key '" + key + "'");
    }
  }
  if (spec.epsilons.empty()) throw std::invalid_argument("grid config: 'epsilons' is required");
  if (!have_amplitudes) {
    throw std::invalid_argument("grid config: 'amplitudes' or 'amplitude_steps' is required");
  }
  if (spec.ci_methods.empty()) spec.ci_methods = {CiMethod::kChernoff, CiMethod::kClopperPearson};
  spec.validate();
  return spec;
}

GridSpec load_grid_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open grid config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_grid_spec(ss.str());
}

std::vector<GridCell> enumerate_cells(const GridSpec& spec) {
  std::vector<GridCell> cells;
  for (double eps : spec.epsilons)
    for (double a : spec.amplitudes)
      for (CiMethod m : spec.ci_methods)
        for (AlphaSchedule s : spec.schedules)
          for (std::uint64_t n : spec.n_shots_values)
            cells.push_back({cells.size(), eps, a, m, s, n});
  return cells;
}

RunRecord run_replication(const GridSpec& spec, const GridCell& cell, std::uint64_t replication) {
  RunRecord rec;
  rec.run_id = cell.index * spec.replications + replication;
  rec.cell = cell.index;
  rec.replication = replication;
  rec.true_amplitude = cell.amplitude;
  if (spec.perturb_amplitudes) {
    Engine eng(derive_seed(spec.master_seed, {cell.index, replication, kPerturbStream}));
    rec.true_amplitude =
        std::clamp(cell.amplitude + spec.perturb_sigma * standard_normal(eng), 0.0, 1.0);
  }
  rec.seed = derive_seed(spec.master_seed, {cell.index, replication, kOracleStream});

  EstimatorConfig config;
  config.epsilon = cell.epsilon;
  config.alpha = spec.alpha;
  config.n_shots = cell.n_shots;
  config.ci_method = cell.method;
  config.schedule = cell.schedule;

  SimulatedOracle oracle(rec.true_amplitude, rec.seed);
  try {
    rec.result = run_modified_iqae(config, oracle);
  } catch (const ContractViolation& e) {
    rec.error = std::string("contract violation: ") + e.what();
  } catch (const NumericalError& e) {
    rec.error = std::string("numerical error: ") + e.what();
  }
  return rec;
}

std::vector<AggregateRow> aggregate(const GridSpec& spec, std::span<const GridCell> cells,
                                    std::span<const RunRecord> runs) {
  std::vector<std::vector<const RunRecord*>> by_cell(cells.size());
  for (const RunRecord& r : runs) {
    if (r.cell >= cells.size()) throw std::invalid_argument("run references an unknown cell");
    by_cell[r.cell].push_back(&r);
  }
  std::vector<AggregateRow> rows;
  rows.reserve(cells.size());
  for (const GridCell& cell : cells) {
    auto& members = by_cell[cell.index];
    std::sort(members.begin(), members.end(),
              [](const RunRecord* a, const RunRecord* b) { return a->run_id < b->run_id; });
    AggregateRow row;
    row.cell = cell;
    row.alpha = spec.alpha;
    row.replications = members.size();
    double queries = 0.0, shots = 0.0, rounds = 0.0, width = 0.0;
    std::uint64_t completed = 0;
    for (const RunRecord* r : members) {
      if (r->aborted()) {
        ++row.error_count;
        continue;
      }
      ++completed;
      queries += static_cast<double>(r->result->total_queries);
      shots += static_cast<double>(r->result->total_shots);
      rounds += static_cast<double>(r->result->rounds.size());
      width += r->result->amplitude_interval.width();
      if (r->failed()) ++row.failure_count;
    }
    row.mean_queries = mean_or_nan(queries, completed);
    row.mean_shots = mean_or_nan(shots, completed);
    row.mean_rounds = mean_or_nan(rounds, completed);
    row.mean_width = mean_or_nan(width, completed);
    row.failure_frequency = mean_or_nan(static_cast<double>(row.failure_count), row.replications);
    rows.push_back(row);
  }
  return rows;
}

GridResult run_grid(const GridSpec& spec, unsigned threads) {
  spec.validate();
  GridResult grid;
  grid.spec = spec;
  grid.cells = enumerate_cells(spec);
  const std::uint64_t total = grid.cells.size() * spec.replications;
  grid.runs.resize(total);

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t id = next++; id < total; id = next++) {
      const GridCell& cell = grid.cells[id / spec.replications];
      grid.runs[id] = run_replication(spec, cell, id % spec.replications);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  grid.rows = aggregate(spec, grid.cells, grid.runs);
  return grid;
}

void write_grid_csv(const GridResult& grid, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  auto agg = open_csv(dir / "aggregate.csv");
  agg << "epsilon,alpha,amplitude,method,schedule,n_shots,replications,mean_queries,mean_shots,"
         "failure_count,failure_frequency,mean_rounds,mean_width,error_count\n";
  for (const AggregateRow& r : grid.rows) {
    agg << format_double(r.cell.epsilon) << ',' << format_double(r.alpha) << ','
        << format_double(r.cell.amplitude) << ',' << to_string(r.cell.method) << ','
        << to_string(r.cell.schedule) << ',' << r.cell.n_shots << ',' << r.replications << ','
        << format_double(r.mean_queries) << ',' << format_double(r.mean_shots) << ','
        << r.failure_count << ',' << format_double(r.failure_frequency) << ','
        << format_double(r.mean_rounds) << ',' << format_double(r.mean_width) << ','
        << r.error_count << '\n';
  }

  auto runs = open_csv(dir / "runs.csv");
  runs << "run_id,cell,replication,epsilon,alpha,amplitude,true_amplitude,method,schedule,"
          "n_shots,seed,a_l,a_u,theta_l,theta_u,point_estimate,total_queries,total_shots,"
          "rounds,failed,error\n";
  auto rounds = open_csv(dir / "rounds.csv");
  rounds << "run_id,round_index,k_i,K_i,alpha_i,n_max_i,R_i,shots_used,ones_observed,theta_l,"
            "theta_u,queries_round\n";
  for (const RunRecord& r : grid.runs) {
    const GridCell& cell = grid.cells[r.cell];
    runs << r.run_id << ',' << r.cell << ',' << r.replication << ','
         << format_double(cell.epsilon) << ',' << format_double(grid.spec.alpha) << ','
         << format_double(cell.amplitude) << ',' << format_double(r.true_amplitude) << ','
         << to_string(cell.method) << ',' << to_string(cell.schedule) << ',' << cell.n_shots
         << ',' << r.seed << ',';
    if (r.result) {
      const EstimationResult& e = *r.result;
      runs << format_double(e.amplitude_interval.lower) << ','
           << format_double(e.amplitude_interval.upper) << ','
           << format_double(e.theta_interval.lower) << ','
           << format_double(e.theta_interval.upper) << ',' << format_double(e.point_estimate)
           << ',' << e.total_queries << ',' << e.total_shots << ',' << e.rounds.size() << ','
           << (r.failed() ? 1 : 0) << ",\n";
      for (const RoundRecord& rr : e.rounds) {
        rounds << r.run_id << ',' << rr.index << ',' << rr.k << ',' << rr.K << ','
               << format_double(rr.alpha_i) << ',' << rr.n_max << ',' << rr.quadrant << ','
               << rr.shots_used << ',' << rr.ones_observed << ','
               << format_double(rr.interval_after.lower) << ','
               << format_double(rr.interval_after.upper) << ',' << rr.queries << '\n';
      }
    } else {
      runs << "nan,nan,nan,nan,nan,0,0,0,0," << csv_safe(r.error) << '\n';
    }
  }
  for (auto* s : {&agg, &runs, &rounds}) {
    s->flush();
    if (!*s) throw std::runtime_error("failed writing grid CSVs to " + dir.string());
  }
}

std::vector<RoundStatRow> per_round_report(std::span<const RunSummary> runs,
                                           std::span<const RoundObservation> rounds) {
  using GroupKey = std::tuple<double, std::string, std::string, std::uint64_t>;
  struct Accum {
    std::uint64_t n = 0;
    double shots = 0.0, queries = 0.0, k = 0.0;
  };
  struct Group {
    std::map<std::uint64_t, Accum> by_k;
    std::map<std::uint64_t, Accum> by_round;
  };

  std::unordered_map<std::uint64_t, const RunSummary*> run_index;
  for (const RunSummary& r : runs) run_index[r.run_id] = &r;

  std::map<GroupKey, Group> groups;
  for (const RoundObservation& obs : rounds) {
    const auto it = run_index.find(obs.run_id);
    if (it == run_index.end()) {
      throw std::invalid_argument("round record references unknown run " +
                                  std::to_string(obs.run_id));
    }
    const RunSummary& run = *it->second;
    if (run.aborted) continue;
    Group& g = groups[{run.epsilon, run.method, run.schedule, run.n_shots}];
    for (Accum* a : {&g.by_k[obs.k], &g.by_round[obs.round_index]}) {
      ++a->n;
      a->shots += static_cast<double>(obs.shots);
      a->queries += static_cast<double>(obs.queries);
      a->k += static_cast<double>(obs.k);
    }
  }

  std::vector<RoundStatRow> out;
  for (const auto& [key, group] : groups) {
    const auto& [eps, method, schedule, n_shots] = key;
    auto emit = [&](const char* table, const std::map<std::uint64_t, Accum>& m) {
      for (const auto& [k, a] : m) {
        out.push_back({eps, method, schedule, n_shots, table, k, a.n,
                       a.shots / static_cast<double>(a.n), a.queries / static_cast<double>(a.n),
                       a.k / static_cast<double>(a.n), k_max(eps)});
      }
    };
    emit("k", group.by_k);
    emit("round", group.by_round);
  }
  return out;
}

std::vector<RoundStatRow> per_round_report(const GridResult& grid) {
  std::vector<RunSummary> runs;
  std::vector<RoundObservation> rounds;
  for (const RunRecord& r : grid.runs) {
    const GridCell& cell = grid.cells[r.cell];
    runs.push_back({r.run_id, cell.epsilon, std::string(to_string(cell.method)),
                    std::string(to_string(cell.schedule)), cell.n_shots, r.aborted()});
    if (!r.result) continue;
    for (const RoundRecord& rr : r.result->rounds) {
      rounds.push_back({r.run_id, rr.index, rr.k, rr.K, rr.shots_used, rr.queries});
    }
  }
  return per_round_report(runs, rounds);
}

std::vector<RoundStatRow> per_round_report(const std::filesystem::path& runs_dir) {
  const CsvTable runs_csv(runs_dir / "runs.csv");
  const CsvTable rounds_csv(runs_dir / "rounds.csv");

  std::vector<RunSummary> runs;
  const std::size_t c_id = runs_csv.column("run_id");
  const std::size_t c_eps = runs_csv.column("epsilon");
  const std::size_t c_method = runs_csv.column("method");
  const std::size_t c_schedule = runs_csv.column("schedule");
  const std::size_t c_shots = runs_csv.column("n_shots");
  const std::size_t c_error = runs_csv.column("error");
  for (const auto& row : runs_csv.rows()) {
    runs.push_back({to_u64(row[c_id]), to_double(row[c_eps]), row[c_method], row[c_schedule],
                    to_u64(row[c_shots]), !row[c_error].empty()});
  }

  std::vector<RoundObservation> rounds;
  const std::size_t r_id = rounds_csv.column("run_id");
  const std::size_t r_index = rounds_csv.column("round_index");
  const std::size_t r_k = rounds_csv.column("k_i");
  const std::size_t r_K = rounds_csv.column("K_i");
  const std::size_t r_shots = rounds_csv.column("shots_used");
  const std::size_t r_queries = rounds_csv.column("queries_round");
  for (const auto& row : rounds_csv.rows()) {
    rounds.push_back({to_u64(row[r_id]), static_cast<std::uint32_t>(to_u64(row[r_index])),
                      to_u64(row[r_k]), to_u64(row[r_K]), to_u64(row[r_shots]),
                      to_u64(row[r_queries])});
  }
  return per_round_report(runs, rounds);
}

void write_round_stats_csv(std::span<const RoundStatRow> rows, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto out = open_csv(path);
  out << "epsilon,method,schedule,n_shots,table,key,samples,mean_shots,mean_queries,mean_k,K_max\n";
  for (const RoundStatRow& r : rows) {
    out << format_double(r.epsilon) << ',' << r.method << ',' << r.schedule << ',' << r.n_shots
        << ',' << r.table << ',' << r.key << ',' << r.samples << ','
        << format_double(r.mean_shots) << ',' << format_double(r.mean_queries) << ','
        << format_double(r.mean_k) << ',' << format_double(r.K_max) << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace miqae::harness
