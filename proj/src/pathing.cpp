#include "opmpc/pathing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace opmpc {

OrderedPath best_order(const Problem& problem, std::span<const PoiId> pois) {
  std::vector<PoiId> elems(pois.begin(), pois.end());
  std::sort(elems.begin(), elems.end());
  if (std::adjacent_find(elems.begin(), elems.end()) != elems.end()) {
    throw std::invalid_argument("best_order: repeated poi");
  }
  for (PoiId p : elems) {
    if (p >= problem.poi_count()) {
      throw std::invalid_argument("best_order: unknown poi id " + std::to_string(p));
    }
  }
  const std::size_t k = elems.size();
  if (k == 0) return {{}, problem.direct()};
  if (k > kMaxOrderedPois) {
    throw std::invalid_argument("best_order: " + std::to_string(k) +
                                " pois exceed the supported maximum");
  }

  // Local copies of every quantity the recurrence touches.
  std::vector<Seconds> leg(k * k), enter(k), leave(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Seconds visit = problem.poi(elems[i]).visit_seconds;
    enter[i] = problem.from_start(elems[i]) + visit;
    leave[i] = problem.to_end(elems[i]);
    for (std::size_t j = 0; j < k; ++j) {
      leg[i * k + j] = i == j ? 0
                              : problem.travel(elems[i], elems[j]) +
                                    problem.poi(elems[j]).visit_seconds;
    }
  }

  // rest[R * k + i]: cheapest way to finish from poi i (already visited)
  // through every poi of the still-open mask R and on to d.
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<Seconds> rest((full + 1) * k, kUnreachable);
  for (std::size_t i = 0; i < k; ++i) rest[i] = leave[i];
  for (std::size_t open = 1; open <= full; ++open) {
    for (std::size_t i = 0; i < k; ++i) {
      if (open >> i & 1) continue;
      Seconds best = kUnreachable;
      for (std::size_t j = 0; j < k; ++j) {
        if (!(open >> j & 1)) continue;
        best = std::min(best, leg[i * k + j] + rest[(open ^ (std::size_t{1} << j)) * k + j]);
      }
      rest[open * k + i] = best;
    }
  }

  auto first_leg = [&](std::size_t j) {
    return enter[j] + rest[(full ^ (std::size_t{1} << j)) * k + j];
  };
  OrderedPath path;
  path.cost = kUnreachable;
  for (std::size_t j = 0; j < k; ++j) path.cost = std::min(path.cost, first_leg(j));

  // Walk forward choosing the smallest id that stays on an optimal path.
  std::size_t open = full;
  std::size_t cur = k;  // k stands for s
  Seconds remaining = path.cost;
  path.order.reserve(k);
  while (open != 0) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!(open >> j & 1)) continue;
      const std::size_t after = open ^ (std::size_t{1} << j);
      const Seconds via =
          (cur == k ? enter[j] : leg[cur * k + j]) + rest[after * k + j];
      if (via == remaining) {
        path.order.push_back(elems[j]);
        remaining = rest[after * k + j];
        open = after;
        cur = j;
        break;
      }
    }
  }
  return path;
}

std::size_t BestOrderCache::KeyHash::operator()(
    const std::vector<PoiId>& key) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (PoiId p : key) {
    h ^= p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

BestOrderCache::BestOrderCache(const Problem& problem, std::size_t max_entries)
    : problem_(&problem), max_entries_(max_entries) {}

OrderedPath BestOrderCache::get(std::span<const PoiId> sorted_pois) {
  std::vector<PoiId> key(sorted_pois.begin(), sorted_pois.end());
  if (auto it = entries_.find(key); it != entries_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  OrderedPath path = best_order(*problem_, key);
  if (entries_.size() >= max_entries_) entries_.clear();
  entries_.emplace(std::move(key), path);
  return path;
}

}  // namespace opmpc
