#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opmpc/model.hpp"
#include "opmpc/search.hpp"

namespace opmpc {

enum class SolveMode { exact, approx, greedy, oracle };

std::string_view to_string(SolveMode mode);
// Throws InputError for anything but exact|approx|greedy|oracle.
SolveMode parse_mode(std::string_view text);

struct RunResult {
  Itinerary best;
  std::optional<double> alpha;  // absent for the greedy baseline
  SearchStats stats;
  double runtime_ms = 0.0;
};

// Dispatches one query to the requested algorithm. `exact` ignores the cut
// factor, queue limit and time limit of `config`; `approx` uses it verbatim.
RunResult run_mode(const Problem& problem, SolveMode mode, const SearchConfig& config);

enum class SweepKind {
  cut_factor,
  queue_length,
  time_limit_ms,
  greedy_threshold,
  max_k,
  category_count,
};

std::string_view to_string(SweepKind kind);

struct BenchSpec {
  std::string instance_id;
  SolveMode mode = SolveMode::approx;
  SearchConfig config;  // values of the knobs that are not swept
  Seconds t_max = 7200;
  std::uint32_t cap = 2;  // the same cap for every category
  std::uint32_t query_count = 25;
  std::uint64_t seed = 0;
  SweepKind sweep = SweepKind::cut_factor;
  std::vector<double> points;
  bool with_oracle = false;
  unsigned workers = 1;

  void validate() const;
};

struct BenchRow {
  std::string instance_id;
  std::uint32_t query_id = 0;
  std::string mode;
  double g = 0.0;
  double cut_factor = 1.0;
  std::optional<std::size_t> l_max;
  std::optional<double> time_limit_ms;
  double score = 0.0;
  double greedy_score = 0.0;
  std::optional<double> oracle_score;
  std::optional<double> alpha;
  double runtime_ms = 0.0;
  std::uint64_t expanded = 0;
  std::uint64_t pruned = 0;
};

// One row per (sweep point, query); queries are drawn once from `seed` and
// reused for every point. Rows come back in point-major order whatever the
// number of workers.
std::vector<BenchRow> run_bench(const Instance& instance, const BenchSpec& spec);

std::string_view csv_header();
void write_csv(std::ostream& out, std::span<const BenchRow> rows);

}  // namespace opmpc
