#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "opmpc/heuristic.hpp"
#include "opmpc/model.hpp"
#include "opmpc/pathing.hpp"
#include "opmpc/priority_deque.hpp"

namespace opmpc {

using Duration = std::chrono::nanoseconds;

struct SearchConfig {
  // Greedy completion of every child whose cost / t_max is at most this.
  double greedy_threshold = 1.0;
  // Prune partials whose potential is below cut_factor * best score.
  double cut_factor = 1.2;
  std::optional<std::size_t> max_queue_len;
  std::optional<Duration> time_limit;
  Reachability reachability = Reachability::exact;
  // Diagnostics: never prune on potential, i.e. enumerate the whole
  // canonical set lattice.
  bool exhaustive = false;
  // Diagnostics: fail with std::logic_error if a POI set is generated twice.
  bool check_unique = false;

  // c = 1, unbounded queue, no time limit: provably optimal.
  static SearchConfig exact() {
    SearchConfig config;
    config.cut_factor = 1.0;
    return config;
  }

  // Throws std::invalid_argument for g outside [0, 1], c < 1 or l_max == 0.
  void validate() const;
};

struct PartialSolution {
  std::vector<PoiId> pois;   // ascending
  std::vector<PoiId> order;  // cheapest visiting order
  Seconds cost = 0;
  double score = 0.0;
  double extra = 0.0;
  double potential = 0.0;
  std::uint64_t seq = 0;
};

// Deque order: higher potential first, then lower cost, then older.
struct LowerPriority {
  bool operator()(const PartialSolution& a, const PartialSolution& b) const {
    if (a.potential != b.potential) return a.potential < b.potential;
    if (a.cost != b.cost) return a.cost > b.cost;
    return a.seq > b.seq;
  }
};

using SolutionDeque = PriorityDeque<PartialSolution, LowerPriority>;

struct SearchStats {
  std::uint64_t expanded = 0;    // partials popped and expanded
  std::uint64_t generated = 0;   // feasible children built (root excluded)
  std::uint64_t pushed = 0;      // entries inserted into the deque
  std::uint64_t pruned = 0;      // partials dropped by the potential bound
  std::uint64_t overflow = 0;    // partials dropped by the queue limit
  std::uint64_t greedy_runs = 0;
  // generated_by_size[j]: children holding j POIs.
  std::vector<std::uint64_t> generated_by_size;
  // Largest potential of any partial dropped so far (bound or overflow).
  double discarded_max_potential = 0.0;
  Duration wall_time{0};
};

enum class StopReason {
  completed,   // deque exhausted or bound reached
  time_limit,  // budget ran out; resumable
};

struct SearchOutcome {
  Itinerary best;
  // Lower bound on best.score / optimum; 1 when optimal.
  double alpha = 1.0;
  bool optimal = false;
  StopReason stop = StopReason::completed;
  SearchStats stats;
};

// Greedy completion: keeps appending, right before d, the POI of best
// utility score / (c(last, p) + t(p) + c(p, d)) among those within their
// category cap, and stops before the first append that breaks t_max or when
// no candidate is left. Ties prefer the higher score, then the lower id.
Itinerary extend_greedily(const Problem& problem, const Itinerary& base);

// extend_greedily() from the empty itinerary.
Itinerary greedy_baseline(const Problem& problem);

// Root of the search: the empty itinerary with its potential.
PartialSolution empty_solution(const Problem& problem, PotentialEvaluator& evaluator);

// Children of `parent` in canonical order: one per POI whose id exceeds every
// id already in the set, skipping cap and time violations.
std::vector<PartialSolution> expand(const Problem& problem,
                                    PotentialEvaluator& evaluator,
                                    BestOrderCache& cache,
                                    const PartialSolution& parent);
std::vector<PartialSolution> expand(const Problem& problem,
                                    const PartialSolution& parent);

// Best-first search over POI sets, resumable between time slices.
//
// The deque starts with the empty itinerary and the best solution with the
// greedy baseline. Each round pops the highest-potential partial, stops if
// its potential is within cut_factor of the best score, otherwise expands
// it, updates the best from children and their greedy completions, and
// finally drops from the low end every partial whose potential is below
// cut_factor * best. A bounded queue evicts the lower of the incoming child
// and the current minimum.
//
// A Search owns its scratch state; move it between threads but never share.
class Search {
 public:
  // Throws InfeasibleQuery when c(s, d) > t_max.
  Search(const Problem& problem, SearchConfig config);

  Search(Search&&) noexcept;
  Search& operator=(Search&&) noexcept;
  ~Search();

  // Runs until completion or until `budget` elapses (nullopt: no limit).
  SearchOutcome run(std::optional<Duration> budget);
  SearchOutcome resume(Duration additional) { return run(additional); }

  bool finished() const { return finished_; }
  SearchOutcome outcome() const;
  std::size_t queue_size() const { return deque_.size(); }
  const SearchConfig& config() const { return config_; }

 private:
  struct Scratch;

  void admit(PartialSolution child);
  void discard(double potential, bool overflow);
  void improve(const Itinerary& candidate);
  void prune_low_end();
  double bound() const { return config_.cut_factor * best_.score; }

  const Problem* problem_;
  SearchConfig config_;
  std::unique_ptr<Scratch> scratch_;
  SolutionDeque deque_;
  Itinerary best_;
  SearchStats stats_;
  bool finished_ = false;
  StopReason last_stop_ = StopReason::completed;
  std::uint64_t next_seq_ = 0;
};

SearchOutcome solve(const Problem& problem, const SearchConfig& config);

// Paper-style worst-case bound on generated itineraries:
// prod_{i < lambda} min(|R| - i, l_max), factors clamped at zero, where R are
// the individually reachable POIs of categories with a positive cap.
boost::multiprecision::cpp_int worst_case_nodes(
    const Problem& problem, std::optional<std::size_t> max_queue_len);

}  // namespace opmpc
