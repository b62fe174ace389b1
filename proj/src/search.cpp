#include "opmpc/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "opmpc/errors.hpp"

namespace opmpc {

void SearchConfig::validate() const {
  if (!(greedy_threshold >= 0.0 && greedy_threshold <= 1.0)) {
    throw std::invalid_argument("greedy threshold must lie in [0, 1]");
  }
  if (!(cut_factor >= 1.0) || !std::isfinite(cut_factor)) {
    throw std::invalid_argument("cut factor must be a finite value >= 1");
  }
  if (max_queue_len && *max_queue_len == 0) {
    throw std::invalid_argument("queue limit must be positive");
  }
  if (time_limit && time_limit->count() < 0) {
    throw std::invalid_argument("time limit must not be negative");
  }
}

namespace {

std::vector<std::uint32_t> category_usage(const Problem& problem,
                                          std::span<const PoiId> pois) {
  std::vector<std::uint32_t> used(problem.instance().category_count(), 0);
  for (PoiId p : pois) ++used[problem.poi(p).category];
  return used;
}

double utility(double score, Seconds detour) {
  if (detour > 0) return score / static_cast<double>(detour);
  return score > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

Itinerary extend_greedily(const Problem& problem, const Itinerary& base) {
  std::vector<PoiId> sequence = base.sequence;
  Seconds cost = itinerary_cost(problem, sequence);
  auto used = category_usage(problem, sequence);
  std::vector<char> member(problem.poi_count(), 0);
  for (PoiId p : sequence) member[p] = 1;

  while (true) {
    const bool empty = sequence.empty();
    const PoiId last = empty ? 0 : sequence.back();
    std::optional<PoiId> pick;
    double pick_utility = 0.0;
    Seconds pick_detour = 0;
    for (const Poi& p : problem.instance().pois()) {
      if (member[p.id] || used[p.category] >= problem.cap(p.category)) continue;
      const Seconds detour = (empty ? problem.from_start(p.id)
                                    : problem.travel(last, p.id)) +
                             p.visit_seconds + problem.to_end(p.id);
      const double u = utility(p.score, detour);
      if (!pick || u > pick_utility ||
          (u == pick_utility && p.score > problem.poi(*pick).score)) {
        pick = p.id;
        pick_utility = u;
        pick_detour = detour;
      }
    }
    if (!pick) break;
    const Seconds extended =
        cost - (empty ? problem.direct() : problem.to_end(last)) + pick_detour;
    if (extended > problem.t_max()) break;
    sequence.push_back(*pick);
    cost = extended;
    member[*pick] = 1;
    ++used[problem.poi(*pick).category];
  }

  Itinerary result;
  result.score = itinerary_score(problem.instance(), sequence);
  result.cost = cost;
  result.sequence = std::move(sequence);
  return result;
}

Itinerary greedy_baseline(const Problem& problem) {
  Itinerary empty;
  empty.cost = problem.direct();
  return extend_greedily(problem, empty);
}

PartialSolution empty_solution(const Problem& problem,
                               PotentialEvaluator& evaluator) {
  PartialSolution root;
  root.cost = problem.direct();
  root.extra = evaluator.extra(OrderedPath{{}, root.cost});
  root.potential = root.extra;
  return root;
}

std::vector<PartialSolution> expand(const Problem& problem,
                                    PotentialEvaluator& evaluator,
                                    BestOrderCache& cache,
                                    const PartialSolution& parent) {
  std::vector<PartialSolution> children;
  const auto used = category_usage(problem, parent.pois);
  Seconds visits = 0;
  for (PoiId p : parent.pois) visits += problem.poi(p).visit_seconds;

  const PoiId first = parent.pois.empty() ? 0 : parent.pois.back() + 1;
  std::vector<PoiId> set = parent.pois;
  set.push_back(0);
  for (PoiId p = first; p < problem.poi_count(); ++p) {
    const Poi& poi = problem.poi(p);
    if (used[poi.category] >= problem.cap(poi.category)) continue;
    // Cheap lower bounds on the child's cost before running the DP.
    if (parent.cost + poi.visit_seconds > problem.t_max()) continue;
    if (problem.from_start(p) + poi.visit_seconds + problem.to_end(p) + visits >
        problem.t_max()) {
      continue;
    }
    set.back() = p;
    OrderedPath path = cache.get(set);
    if (path.cost > problem.t_max()) continue;

    PartialSolution child;
    child.pois = set;
    child.score = itinerary_score(problem.instance(), path.order);
    child.extra = evaluator.extra(path);
    child.potential = child.score + child.extra;
    child.cost = path.cost;
    child.order = std::move(path.order);
    children.push_back(std::move(child));
  }
  return children;
}

std::vector<PartialSolution> expand(const Problem& problem,
                                    const PartialSolution& parent) {
  BestOrderCache cache(problem);
  PotentialEvaluator evaluator(problem, Reachability::exact, &cache);
  return expand(problem, evaluator, cache, parent);
}

struct Search::Scratch {
  Scratch(const Problem& problem, Reachability rule)
      : cache(problem), evaluator(problem, rule, &cache) {}

  struct SetHash {
    std::size_t operator()(const std::vector<PoiId>& key) const {
      std::size_t h = 0;
      for (PoiId p : key) h = h * 1000003u ^ p;
      return h;
    }
  };

  BestOrderCache cache;
  PotentialEvaluator evaluator;
  std::unordered_set<std::vector<PoiId>, SetHash> seen;
};

Search::Search(const Problem& problem, SearchConfig config)
    : problem_(&problem), config_(std::move(config)) {
  config_.validate();
  if (!problem.has_feasible_route()) {
    throw InfeasibleQuery("c(s, d) = " + std::to_string(problem.direct()) +
                          " exceeds t_max = " + std::to_string(problem.t_max()));
  }
  scratch_ = std::make_unique<Scratch>(problem, config_.reachability);
  best_ = greedy_baseline(problem);
  ++stats_.greedy_runs;

  PartialSolution root = empty_solution(problem, scratch_->evaluator);
  root.seq = next_seq_++;
  if (config_.check_unique) scratch_->seen.insert(root.pois);
  deque_.push(std::move(root));
  ++stats_.pushed;
}

Search::Search(Search&&) noexcept = default;
Search& Search::operator=(Search&&) noexcept = default;
Search::~Search() = default;

void Search::discard(double potential, bool overflow) {
  ++(overflow ? stats_.overflow : stats_.pruned);
  stats_.discarded_max_potential =
      std::max(stats_.discarded_max_potential, potential);
}

void Search::improve(const Itinerary& candidate) {
  if (candidate.score > best_.score) best_ = candidate;
}

void Search::admit(PartialSolution child) {
  if (!config_.exhaustive && bound() > child.potential) {
    discard(child.potential, false);
    return;
  }
  if (config_.max_queue_len && deque_.size() >= *config_.max_queue_len) {
    if (LowerPriority{}(child, deque_.min())) {
      discard(child.potential, true);
      return;
    }
    discard(deque_.pop_min().potential, true);
  }
  deque_.push(std::move(child));
  ++stats_.pushed;
}

void Search::prune_low_end() {
  while (!deque_.empty() && bound() > deque_.min().potential) {
    discard(deque_.pop_min().potential, false);
  }
}

SearchOutcome Search::run(std::optional<Duration> budget) {
  if (finished_) return outcome();
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration_cast<Duration>(Clock::now() - start); };
  Scratch& scratch = *scratch_;

  while (!deque_.empty()) {
    if (budget && elapsed() >= *budget) {
      last_stop_ = StopReason::time_limit;
      stats_.wall_time += elapsed();
      return outcome();
    }

    PartialSolution top = deque_.pop_max();
    if (!config_.exhaustive && top.potential <= bound()) {
      // Everything still queued ranks at or below `top`.
      discard(top.potential, false);
      stats_.pruned += deque_.size();
      deque_.clear();
      break;
    }

    ++stats_.expanded;
    auto children = expand(*problem_, scratch.evaluator, scratch.cache, top);
    for (PartialSolution& child : children) {
      child.seq = next_seq_++;
      ++stats_.generated;
      if (stats_.generated_by_size.size() <= child.pois.size()) {
        stats_.generated_by_size.resize(child.pois.size() + 1, 0);
      }
      ++stats_.generated_by_size[child.pois.size()];
      if (config_.check_unique && !scratch.seen.insert(child.pois).second) {
        throw std::logic_error("poi set generated twice");
      }

      Itinerary as_itinerary{child.order, child.cost, child.score};
      improve(as_itinerary);
      if (static_cast<double>(child.cost) <=
          config_.greedy_threshold * static_cast<double>(problem_->t_max())) {
        ++stats_.greedy_runs;
        improve(extend_greedily(*problem_, as_itinerary));
      }
      admit(std::move(child));
    }
    if (!config_.exhaustive) prune_low_end();
  }

  finished_ = true;
  last_stop_ = StopReason::completed;
  stats_.wall_time += elapsed();
  return outcome();
}

SearchOutcome Search::outcome() const {
  SearchOutcome out;
  out.best = best_;
  out.stats = stats_;
  out.stop = finished_ ? StopReason::completed : StopReason::time_limit;

  double ceiling = std::max(best_.score, stats_.discarded_max_potential);
  if (!finished_ && !deque_.empty()) ceiling = std::max(ceiling, deque_.max().potential);
  out.alpha = ceiling > 0.0 ? std::min(1.0, best_.score / ceiling) : 1.0;
  out.optimal = finished_ && stats_.overflow == 0 &&
                (config_.cut_factor == 1.0 || config_.exhaustive);
  if (out.optimal) out.alpha = 1.0;
  return out;
}

SearchOutcome solve(const Problem& problem, const SearchConfig& config) {
  Search search(problem, config);
  return search.run(config.time_limit);
}

boost::multiprecision::cpp_int worst_case_nodes(
    const Problem& problem, std::optional<std::size_t> max_queue_len) {
  using boost::multiprecision::cpp_int;
  const std::uint64_t lambda = problem.total_budget();
  std::uint64_t relevant = 0;
  for (const Poi& p : problem.instance().pois()) {
    if (problem.cap(p.category) == 0) continue;
    if (problem.from_start(p.id) + p.visit_seconds + problem.to_end(p.id) <=
        problem.t_max()) {
      ++relevant;
    }
  }
  cpp_int product = 1;
  for (std::uint64_t i = 0; i < lambda; ++i) {
    std::uint64_t factor = relevant > i ? relevant - i : 0;
    if (max_queue_len) factor = std::min<std::uint64_t>(factor, *max_queue_len);
    product *= factor;
    if (product == 0) break;
  }
  return product;
}

}  // namespace opmpc
