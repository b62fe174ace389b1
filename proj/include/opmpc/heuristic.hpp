#pragma once

#include <memory>
#include <vector>

#include "opmpc/model.hpp"
#include "opmpc/pathing.hpp"

namespace opmpc {

// How the extra-score heuristic decides that a remaining POI can still be
// added to a partial itinerary.
enum class Reachability {
  // Keep p iff some itinerary through the partial's POIs plus p fits the
  // budget: best_order(P + {p}).cost <= t_max. Admissible and monotone.
  exact,
  // Keep p iff appending it right before d fits the budget. Cheaper, but a
  // POI that only fits earlier in the order is dropped, so the potential can
  // underestimate the best completion.
  append_only,
};

struct PotentialBreakdown {
  double score = 0.0;
  double extra = 0.0;
  double potential = 0.0;
};

// Upper bound on the score a partial itinerary can still collect.
//
// For every category with remaining budget b = max_k - used, the heuristic
// adds the b best scores among POIs that are not yet visited and that pass
// the reachability test. Per-category score lists are sorted once up front,
// so a call only scans until each budget is filled.
//
// Holds per-query scratch state; one evaluator per thread.
class PotentialEvaluator {
 public:
  // `cache` (optional) is used for exact reachability checks; an internal
  // cache is created when it is null.
  explicit PotentialEvaluator(const Problem& problem,
                              Reachability rule = Reachability::exact,
                              BestOrderCache* cache = nullptr);

  // `partial` must be feasible: cost <= t_max and caps respected.
  double extra(const OrderedPath& partial);
  PotentialBreakdown potential(const OrderedPath& partial);

  // Reachability test for a single candidate outside `partial`.
  bool reachable(const OrderedPath& partial, PoiId candidate);

  Reachability rule() const { return rule_; }

 private:
  bool reachable_sorted(const OrderedPath& partial,
                        const std::vector<PoiId>& sorted_members,
                        Seconds members_visit, PoiId candidate);

  const Problem* problem_;
  Reachability rule_;
  std::unique_ptr<BestOrderCache> own_cache_;
  BestOrderCache* cache_;
  std::vector<std::vector<PoiId>> by_category_;
  std::vector<char> member_;
  std::vector<PoiId> scratch_;
};

double extra(const Problem& problem, const OrderedPath& partial,
             Reachability rule = Reachability::exact);
PotentialBreakdown potential(const Problem& problem, const OrderedPath& partial,
                             Reachability rule = Reachability::exact);

}  // namespace opmpc
