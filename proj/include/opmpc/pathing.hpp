#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "opmpc/model.hpp"

namespace opmpc {

struct OrderedPath {
  std::vector<PoiId> order;
  Seconds cost = 0;

  friend bool operator==(const OrderedPath&, const OrderedPath&) = default;
};

// Largest POI set best_order() accepts (the DP table grows as 2^k * k).
inline constexpr std::size_t kMaxOrderedPois = 20;

// Cheapest s -> d itinerary through exactly the given POIs, by dynamic
// programming over subsets. Among equal-cost orders the lexicographically
// smallest id sequence wins. The empty set yields c(s, d).
OrderedPath best_order(const Problem& problem, std::span<const PoiId> pois);

// Memoizes best_order() by POI set for one search. Not thread-safe.
class BestOrderCache {
 public:
  explicit BestOrderCache(const Problem& problem,
                          std::size_t max_entries = std::size_t{1} << 20);

  // `sorted_pois` must be strictly ascending.
  OrderedPath get(std::span<const PoiId> sorted_pois);

  std::size_t size() const { return entries_.size(); }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<PoiId>& key) const;
  };

  const Problem* problem_;
  std::size_t max_entries_;
  std::unordered_map<std::vector<PoiId>, OrderedPath, KeyHash> entries_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

}  // namespace opmpc
