#pragma once

// Reference implementations that share no code with the library: all-pairs
// distances by Floyd-Warshall, costs summed leg by leg, orders found by
// enumerating permutations, optima by depth-first search over sequences.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "opmpc/model.hpp"

namespace opmpc::testing {

class FloydClosure {
 public:
  explicit FloydClosure(const TravelGraph& g) {
    const std::size_t n = g.nodes.size();
    for (std::size_t i = 0; i < n; ++i) index_[g.nodes[i]] = i;
    d_.assign(n, std::vector<Seconds>(n, kInf));
    for (std::size_t i = 0; i < n; ++i) d_[i][i] = 0;
    for (const Edge& e : g.edges) {
      auto a = index_.at(e.u), b = index_.at(e.v);
      d_[a][b] = std::min(d_[a][b], e.seconds);
      d_[b][a] = std::min(d_[b][a], e.seconds);
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (d_[i][k] < kInf && d_[k][j] < kInf) d_[i][j] = std::min(d_[i][j], d_[i][k] + d_[k][j]);
  }

  Seconds operator()(NodeId a, NodeId b) const { return d_[index_.at(a)][index_.at(b)]; }

  static constexpr Seconds kInf = std::numeric_limits<Seconds>::max() / 4;

 private:
  std::map<NodeId, std::size_t> index_;
  std::vector<std::vector<Seconds>> d_;
};

// Cost of s -> seq -> d written out term by term.
inline Seconds naive_cost(const Instance& inst, const FloydClosure& fw, const Query& q,
                          std::span<const PoiId> seq) {
  if (seq.empty()) return fw(q.s, q.d);
  Seconds total = fw(q.s, inst.poi(seq.front()).node);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    total += inst.poi(seq[i]).visit_seconds;
    const NodeId here = inst.poi(seq[i]).node;
    const NodeId next = i + 1 < seq.size() ? inst.poi(seq[i + 1]).node : q.d;
    total += fw(here, next);
  }
  return total;
}

inline double naive_score(const Instance& inst, std::span<const PoiId> seq) {
  std::vector<PoiId> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end());
  double s = 0.0;
  for (PoiId p : sorted) s += inst.poi(p).score;
  return s;
}

struct PermutationBest {
  std::vector<PoiId> order;
  Seconds cost = 0;
};

// Cheapest order by trying every permutation in lexicographic order; the
// first one reaching the minimum is kept, so ties resolve to the smallest
// sequence.
inline PermutationBest permutation_best(const Instance& inst, const FloydClosure& fw,
                                        const Query& q, std::vector<PoiId> set) {
  std::sort(set.begin(), set.end());
  const std::size_t k = set.size();
  if (k == 0) return {set, fw(q.s, q.d)};
  // Slots 0..k-1 are the POIs, k is s, k+1 is d.
  std::vector<NodeId> node(k + 2);
  for (std::size_t i = 0; i < k; ++i) node[i] = inst.poi(set[i]).node;
  node[k] = q.s;
  node[k + 1] = q.d;
  std::vector<Seconds> dist((k + 2) * (k + 2));
  for (std::size_t a = 0; a < k + 2; ++a)
    for (std::size_t b = 0; b < k + 2; ++b) dist[a * (k + 2) + b] = fw(node[a], node[b]);
  Seconds visits = 0;
  for (PoiId p : set) visits += inst.poi(p).visit_seconds;

  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  PermutationBest best{set, std::numeric_limits<Seconds>::max()};
  do {
    Seconds c = visits + dist[k * (k + 2) + perm[0]] + dist[perm[k - 1] * (k + 2) + k + 1];
    for (std::size_t i = 1; i < k; ++i) c += dist[perm[i - 1] * (k + 2) + perm[i]];
    if (c < best.cost) {
      best.cost = c;
      for (std::size_t i = 0; i < k; ++i) best.order[i] = set[perm[i]];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Bitmask (over POI ids) of every POI set that some feasible itinerary
// visits, found by extending sequences one POI at a time. Extending never
// lowers the cost of a shortest-path closure, so over-budget prefixes can be
// cut. Needs poi_count <= 20.
inline std::vector<char> feasible_sets(const Instance& inst, const FloydClosure& fw,
                                       const Query& q) {
  const std::size_t n = inst.poi_count();
  std::vector<char> feasible(std::size_t{1} << n, 0);
  if (fw(q.s, q.d) > q.t_max) return feasible;
  std::vector<std::uint32_t> used(q.max_k.size(), 0);
  std::vector<PoiId> seq;
  auto dfs = [&](auto&& self, std::uint32_t mask) -> void {
    feasible[mask] = 1;
    for (PoiId p = 0; p < n; ++p) {
      if (mask >> p & 1u) continue;
      const CategoryId k = inst.poi(p).category;
      if (used[k] >= q.max_k[k]) continue;
      seq.push_back(p);
      if (naive_cost(inst, fw, q, seq) <= q.t_max) {
        ++used[k];
        self(self, mask | (1u << p));
        --used[k];
      }
      seq.pop_back();
    }
  };
  dfs(dfs, 0);
  return feasible;
}

inline double mask_score(const Instance& inst, std::uint32_t mask) {
  double s = 0.0;
  for (PoiId p = 0; p < inst.poi_count(); ++p)
    if (mask >> p & 1u) s += inst.poi(p).score;
  return s;
}

inline std::vector<PoiId> mask_members(std::uint32_t mask, std::size_t n) {
  std::vector<PoiId> out;
  for (PoiId p = 0; p < n; ++p)
    if (mask >> p & 1u) out.push_back(p);
  return out;
}

// Best score of a feasible superset of each feasible mask (-1 elsewhere).
inline std::vector<double> best_completion(const Instance& inst, const std::vector<char>& feasible) {
  const std::size_t n = inst.poi_count();
  std::vector<double> best(feasible.size(), -1.0);
  for (std::uint32_t m = 0; m < feasible.size(); ++m)
    if (feasible[m]) best[m] = mask_score(inst, m);
  for (std::size_t bit = 0; bit < n; ++bit)
    for (std::uint32_t m = 0; m < feasible.size(); ++m)
      if (!(m >> bit & 1u)) best[m] = std::max(best[m], best[m | (1u << bit)]);
  for (std::uint32_t m = 0; m < feasible.size(); ++m)
    if (!feasible[m]) best[m] = -1.0;
  return best;
}

inline double brute_optimum(const Instance& inst, const Query& q) {
  const FloydClosure fw(inst.graph());
  const auto feasible = feasible_sets(inst, fw, q);
  double best = -1.0;
  for (std::uint32_t m = 0; m < feasible.size(); ++m)
    if (feasible[m]) best = std::max(best, mask_score(inst, m));
  return best;
}

}  // namespace opmpc::testing
