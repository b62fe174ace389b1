#include "opmpc/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "opmpc/errors.hpp"

namespace opmpc {

Instance::Instance(TravelGraph graph, std::vector<Poi> pois,
                   std::uint32_t categories)
    : graph_(std::move(graph)),
      network_(graph_),
      pois_(std::move(pois)),
      categories_(categories) {
  std::sort(pois_.begin(), pois_.end(),
            [](const Poi& a, const Poi& b) { return a.id < b.id; });
  validate_pois();

  std::vector<NodeId> nodes;
  nodes.reserve(pois_.size());
  for (const Poi& p : pois_) nodes.push_back(p.node);
  distances_ = metric_closure(network_, nodes);
  terminal_.reserve(pois_.size());
  for (const Poi& p : pois_) terminal_.push_back(*distances_.index_of(p.node));
}

void Instance::validate_pois() const {
  for (std::size_t i = 0; i < pois_.size(); ++i) {
    const Poi& p = pois_[i];
    const std::string where = "poi " + std::to_string(p.id);
    if (p.id != i) {
      throw InputError("poi ids must be exactly 0.." +
                       std::to_string(pois_.size() - 1) + "; found " +
                       std::to_string(p.id) + " at rank " + std::to_string(i));
    }
    if (!network_.contains(p.node)) {
      throw InputError(where + " sits on unknown node " +
                       std::to_string(p.node));
    }
    if (p.category >= categories_) {
      throw InputError(where + " has category " + std::to_string(p.category) +
                       " but only " + std::to_string(categories_) +
                       " categories exist");
    }
    if (!std::isfinite(p.score) || p.score < 0.0) {
      throw InputError(where + " has an invalid score");
    }
    if (p.visit_seconds < 0) {
      throw InputError(where + " has a negative visiting time");
    }
  }
}

Instance Instance::with_categories(std::span<const CategoryId> categories,
                                   std::uint32_t category_count) const {
  if (categories.size() != pois_.size()) {
    throw std::invalid_argument("one category per POI expected");
  }
  Instance copy = *this;
  copy.categories_ = category_count;
  for (std::size_t i = 0; i < pois_.size(); ++i) {
    copy.pois_[i].category = categories[i];
  }
  copy.validate_pois();
  return copy;
}

Problem::Problem(const Instance& instance, Query query)
    : instance_(&instance), query_(std::move(query)) {
  const RoadNetwork& net = instance.network();
  if (!net.contains(query_.s)) {
    throw std::invalid_argument("unknown start node " + std::to_string(query_.s));
  }
  if (!net.contains(query_.d)) {
    throw std::invalid_argument("unknown destination node " +
                                std::to_string(query_.d));
  }
  if (query_.t_max <= 0) {
    throw std::invalid_argument("t_max must be positive");
  }
  if (query_.max_k.size() != instance.category_count()) {
    throw std::invalid_argument(
        "expected " + std::to_string(instance.category_count()) +
        " category caps, got " + std::to_string(query_.max_k.size()));
  }

  const auto from_s = net.shortest_from(query_.s);
  const auto from_d =
      query_.d == query_.s ? from_s : net.shortest_from(query_.d);
  direct_ = from_s[*net.index_of(query_.d)];
  if (direct_ == kUnreachable) throw DisconnectedGraph(query_.s, query_.d);

  from_start_.reserve(instance.poi_count());
  to_end_.reserve(instance.poi_count());
  for (const Poi& p : instance.pois()) {
    const std::size_t idx = *net.index_of(p.node);
    if (from_s[idx] == kUnreachable) throw DisconnectedGraph(query_.s, p.node);
    if (from_d[idx] == kUnreachable) throw DisconnectedGraph(query_.d, p.node);
    from_start_.push_back(from_s[idx]);
    to_end_.push_back(from_d[idx]);
  }
}

std::uint32_t Problem::total_budget() const {
  return std::accumulate(query_.max_k.begin(), query_.max_k.end(),
                         std::uint32_t{0});
}

namespace {

void require_known(const Problem& problem, std::span<const PoiId> sequence) {
  for (PoiId p : sequence) {
    if (p >= problem.poi_count()) {
      throw std::invalid_argument("unknown poi id " + std::to_string(p));
    }
  }
}

bool has_repeat(std::span<const PoiId> sequence) {
  std::vector<PoiId> sorted(sequence.begin(), sequence.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

Seconds accumulate_cost(const Problem& problem, std::span<const PoiId> sequence) {
  if (sequence.empty()) return problem.direct();
  Seconds cost = problem.from_start(sequence.front());
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (i > 0) cost += problem.travel(sequence[i - 1], sequence[i]);
    cost += problem.poi(sequence[i]).visit_seconds;
  }
  return cost + problem.to_end(sequence.back());
}

}  // namespace

Seconds itinerary_cost(const Problem& problem, std::span<const PoiId> sequence) {
  require_known(problem, sequence);
  if (has_repeat(sequence)) {
    throw std::invalid_argument("itinerary visits a poi twice");
  }
  return accumulate_cost(problem, sequence);
}

double itinerary_score(const Instance& instance, std::span<const PoiId> sequence) {
  std::vector<PoiId> sorted(sequence.begin(), sequence.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("itinerary visits a poi twice");
  }
  double score = 0.0;
  for (PoiId p : sorted) {
    if (p >= instance.poi_count()) {
      throw std::invalid_argument("unknown poi id " + std::to_string(p));
    }
    score += instance.poi(p).score;
  }
  return score;
}

Itinerary make_itinerary(const Problem& problem, std::vector<PoiId> sequence) {
  Itinerary it;
  it.cost = itinerary_cost(problem, sequence);
  it.score = itinerary_score(problem.instance(), sequence);
  it.sequence = std::move(sequence);
  return it;
}

Feasibility check_feasible(const Problem& problem, const Itinerary& itinerary) {
  require_known(problem, itinerary.sequence);
  Feasibility verdict;
  verdict.repeats_poi = has_repeat(itinerary.sequence);
  verdict.cost = accumulate_cost(problem, itinerary.sequence);
  verdict.over_time = verdict.cost > problem.t_max();

  std::vector<std::uint32_t> used(problem.instance().category_count(), 0);
  for (PoiId p : itinerary.sequence) ++used[problem.poi(p).category];
  for (CategoryId k = 0; k < used.size(); ++k) {
    if (used[k] > problem.cap(k)) verdict.over_cap.push_back(k);
  }
  return verdict;
}

}  // namespace opmpc
