#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "opmpc/network.hpp"

namespace opmpc {

using PoiId = std::uint32_t;
using CategoryId = std::uint32_t;

struct Poi {
  PoiId id = 0;
  NodeId node = 0;
  CategoryId category = 0;
  double score = 0.0;
  Seconds visit_seconds = 0;

  friend bool operator==(const Poi&, const Poi&) = default;
};

struct Query {
  NodeId s = 0;
  NodeId d = 0;
  Seconds t_max = 0;
  std::vector<std::uint32_t> max_k;

  friend bool operator==(const Query&, const Query&) = default;
};

struct Itinerary {
  std::vector<PoiId> sequence;
  Seconds cost = 0;
  double score = 0.0;

  friend bool operator==(const Itinerary&, const Itinerary&) = default;
};

// Road network, POI table and the metric closure among POI nodes. Immutable
// once built; share freely between threads.
class Instance {
 public:
  Instance() = default;
  // Validates every invariant of the model and computes the metric closure
  // over the nodes carrying POIs. POIs may be given in any order but their
  // ids must be exactly 0..n-1.
  Instance(TravelGraph graph, std::vector<Poi> pois, std::uint32_t categories);

  const TravelGraph& graph() const { return graph_; }
  const RoadNetwork& network() const { return network_; }
  std::span<const Poi> pois() const { return pois_; }
  const Poi& poi(PoiId id) const { return pois_[id]; }
  std::size_t poi_count() const { return pois_.size(); }
  std::uint32_t category_count() const { return categories_; }
  const DistanceMatrix& distances() const { return distances_; }

  Seconds travel(PoiId a, PoiId b) const {
    return distances_.at(terminal_[a], terminal_[b]);
  }

  // Same network and distances with POI categories replaced.
  Instance with_categories(std::span<const CategoryId> categories,
                           std::uint32_t category_count) const;

  // Structural equality: graph, POIs and category count.
  friend bool operator==(const Instance& a, const Instance& b) {
    return a.graph_ == b.graph_ && a.pois_ == b.pois_ &&
           a.categories_ == b.categories_;
  }

 private:
  void validate_pois() const;

  TravelGraph graph_;
  RoadNetwork network_;
  std::vector<Poi> pois_;
  std::uint32_t categories_ = 0;
  DistanceMatrix distances_;
  std::vector<std::size_t> terminal_;
};

// An instance bound to one query: adds the travel times from s and to d.
// The instance must outlive the problem.
class Problem {
 public:
  // Throws std::invalid_argument for a malformed query (unknown endpoint,
  // wrong number of caps, non-positive budget) and DisconnectedGraph when an
  // endpoint cannot reach some POI. An over-budget s -> d trip is allowed
  // here; see has_feasible_route().
  Problem(const Instance& instance, Query query);

  const Instance& instance() const { return *instance_; }
  const Query& query() const { return query_; }
  std::size_t poi_count() const { return instance_->poi_count(); }
  const Poi& poi(PoiId id) const { return instance_->poi(id); }

  Seconds t_max() const { return query_.t_max; }
  std::uint32_t cap(CategoryId category) const { return query_.max_k[category]; }
  // Sum of all category caps: no feasible itinerary holds more POIs.
  std::uint32_t total_budget() const;

  Seconds travel(PoiId a, PoiId b) const { return instance_->travel(a, b); }
  Seconds from_start(PoiId p) const { return from_start_[p]; }
  Seconds to_end(PoiId p) const { return to_end_[p]; }
  Seconds direct() const { return direct_; }
  bool has_feasible_route() const { return direct_ <= query_.t_max; }

 private:
  const Instance* instance_;
  Query query_;
  std::vector<Seconds> from_start_;
  std::vector<Seconds> to_end_;
  Seconds direct_ = 0;
};

// Total duration of s -> sequence -> d including visiting times; c(s, d) for
// the empty sequence. Throws std::invalid_argument on unknown or repeated ids.
Seconds itinerary_cost(const Problem& problem, std::span<const PoiId> sequence);

// Sum of POI scores, accumulated in ascending id order so that equal sets
// always produce bit-identical totals.
double itinerary_score(const Instance& instance, std::span<const PoiId> sequence);

// Itinerary with cost and score filled in from `sequence`.
Itinerary make_itinerary(const Problem& problem, std::vector<PoiId> sequence);

struct Feasibility {
  Seconds cost = 0;
  bool over_time = false;
  bool repeats_poi = false;
  std::vector<CategoryId> over_cap;

  bool ok() const { return !over_time && !repeats_poi && over_cap.empty(); }
};

// Verdict on time budget, category caps and repeated visits. Cost is
// recomputed from the sequence; the itinerary's stored cost is ignored.
// Unknown POI ids throw std::invalid_argument.
Feasibility check_feasible(const Problem& problem, const Itinerary& itinerary);

}  // namespace opmpc
