#include "opmpc/heuristic.hpp"

#include <algorithm>
#include <limits>

namespace opmpc {

PotentialEvaluator::PotentialEvaluator(const Problem& problem, Reachability rule,
                                       BestOrderCache* cache)
    : problem_(&problem), rule_(rule), cache_(cache) {
  if (cache_ == nullptr) {
    own_cache_ = std::make_unique<BestOrderCache>(problem);
    cache_ = own_cache_.get();
  }
  by_category_.resize(problem.instance().category_count());
  for (const Poi& p : problem.instance().pois()) {
    by_category_[p.category].push_back(p.id);
  }
  for (auto& list : by_category_) {
    std::stable_sort(list.begin(), list.end(), [&](PoiId a, PoiId b) {
      return problem.poi(a).score > problem.poi(b).score;
    });
  }
  member_.assign(problem.poi_count(), 0);
}

bool PotentialEvaluator::reachable(const OrderedPath& partial, PoiId candidate) {
  std::vector<PoiId> sorted = partial.order;
  std::sort(sorted.begin(), sorted.end());
  Seconds visits = 0;
  for (PoiId p : sorted) visits += problem_->poi(p).visit_seconds;
  return reachable_sorted(partial, sorted, visits, candidate);
}

bool PotentialEvaluator::reachable_sorted(const OrderedPath& partial,
                                          const std::vector<PoiId>& sorted_members,
                                          Seconds members_visit, PoiId candidate) {
  const Problem& pr = *problem_;
  const Seconds t_max = pr.t_max();
  const Seconds visit = pr.poi(candidate).visit_seconds;

  // Detour of inserting the candidate between its predecessor (the last poi,
  // or s) and d.
  const bool empty = partial.order.empty();
  const PoiId last = empty ? 0 : partial.order.back();
  const Seconds before_d = partial.cost - (empty ? pr.direct() : pr.to_end(last));
  const Seconds appended = before_d +
                           (empty ? pr.from_start(candidate) : pr.travel(last, candidate)) +
                           visit + pr.to_end(candidate);
  if (appended <= t_max) return true;
  if (rule_ == Reachability::append_only || empty) return false;

  // Cheap lower bounds on best_order(P + {candidate}).cost.
  if (pr.from_start(candidate) + visit + pr.to_end(candidate) + members_visit > t_max) {
    return false;
  }
  // Removing the candidate from an optimal tour of P + {candidate} leaves a
  // tour of P, so that tour costs at least opt(P) plus the cheapest detour
  // between two tour neighbours.
  const Seconds opt = cache_->get(sorted_members).cost;
  Seconds detour = std::numeric_limits<Seconds>::max();
  for (PoiId b : sorted_members) {
    detour = std::min(detour, pr.from_start(candidate) + visit +
                                  pr.travel(candidate, b) - pr.from_start(b));
    detour = std::min(detour, pr.travel(b, candidate) + visit +
                                  pr.to_end(candidate) - pr.to_end(b));
    for (PoiId a : sorted_members) {
      if (a == b) continue;
      detour = std::min(detour, pr.travel(a, candidate) + visit +
                                    pr.travel(candidate, b) - pr.travel(a, b));
    }
  }
  if (opt + detour > t_max) return false;

  scratch_ = sorted_members;
  scratch_.insert(std::upper_bound(scratch_.begin(), scratch_.end(), candidate),
                  candidate);
  return cache_->get(scratch_).cost <= t_max;
}

double PotentialEvaluator::extra(const OrderedPath& partial) {
  const Problem& pr = *problem_;
  std::vector<std::uint32_t> used(by_category_.size(), 0);
  std::vector<PoiId> sorted = partial.order;
  std::sort(sorted.begin(), sorted.end());
  Seconds visits = 0;
  for (PoiId p : sorted) {
    member_[p] = 1;
    ++used[pr.poi(p).category];
    visits += pr.poi(p).visit_seconds;
  }

  double total = 0.0;
  for (CategoryId k = 0; k < by_category_.size(); ++k) {
    if (pr.cap(k) <= used[k]) continue;
    std::uint32_t budget = pr.cap(k) - used[k];
    for (PoiId q : by_category_[k]) {
      if (member_[q] || !reachable_sorted(partial, sorted, visits, q)) continue;
      total += pr.poi(q).score;
      if (--budget == 0) break;
    }
  }

  for (PoiId p : sorted) member_[p] = 0;
  return total;
}

PotentialBreakdown PotentialEvaluator::potential(const OrderedPath& partial) {
  PotentialBreakdown b;
  b.score = itinerary_score(problem_->instance(), partial.order);
  b.extra = extra(partial);
  b.potential = b.score + b.extra;
  return b;
}

double extra(const Problem& problem, const OrderedPath& partial,
             Reachability rule) {
  return PotentialEvaluator(problem, rule).extra(partial);
}

PotentialBreakdown potential(const Problem& problem, const OrderedPath& partial,
                             Reachability rule) {
  return PotentialEvaluator(problem, rule).potential(partial);
}

}  // namespace opmpc
