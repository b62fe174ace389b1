#pragma once

// Shared test instances: the four-POI worked example and a seeded corpus of
// small random instances.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "opmpc/model.hpp"

namespace opmpc::testing {

// Worked example: s and d plus four POIs. p1, p3 (category 0, score 0.9) and
// p2, p4 (category 1, score 0.5), each visited for 1 s. POI ids are 0-based,
// so p1 has id 0.
inline constexpr NodeId kS = 10;
inline constexpr NodeId kD = 11;
inline constexpr PoiId kP1 = 0, kP2 = 1, kP3 = 2, kP4 = 3;

inline Instance figure_instance() {
  TravelGraph g;
  g.nodes = {kS, kD, 1, 2, 3, 4};
  g.edges = {{kS, 1, 4}, {kS, 2, 2}, {1, kD, 6}, {2, 3, 2},
             {3, kD, 3}, {3, 4, 2}, {4, kD, 1}};
  std::vector<Poi> pois = {
      {kP1, 1, 0, 0.9, 1},
      {kP2, 2, 1, 0.5, 1},
      {kP3, 3, 0, 0.9, 1},
      {kP4, 4, 1, 0.5, 1},
  };
  return Instance(std::move(g), std::move(pois), 2);
}

inline Query figure_query(Seconds t_max = 10, std::vector<std::uint32_t> caps = {1, 1}) {
  return Query{kS, kD, t_max, std::move(caps)};
}

struct CorpusCase {
  std::uint64_t seed = 0;
  Instance instance;
  Query query;
};

// Small random road network: points in a square joined by a random spanning
// tree plus nearest-neighbour shortcuts, weights = rounded Euclidean length.
// 4..max_pois POIs with integer scores, 2..4 categories, caps 0..3.
inline CorpusCase random_case(std::uint64_t seed, std::uint32_t max_pois = 12) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 17);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  const int n = uni(4, static_cast<int>(max_pois));
  const int m = uni(2, 4);
  const int node_count = n + uni(2, 6);
  std::vector<std::pair<double, double>> xy(node_count);
  for (auto& p : xy) p = {uni(0, 100), uni(0, 100)};
  auto dist = [&](int a, int b) {
    const double dx = xy[a].first - xy[b].first, dy = xy[a].second - xy[b].second;
    return static_cast<Seconds>(std::lround(std::sqrt(dx * dx + dy * dy)));
  };

  TravelGraph g;
  for (int i = 0; i < node_count; ++i) g.nodes.push_back(i);
  std::set<std::pair<int, int>> used;
  auto add = [&](int a, int b) {
    if (a == b) return;
    auto key = std::minmax(a, b);
    if (!used.insert(key).second) return;
    g.edges.push_back({a, b, dist(a, b)});
  };
  for (int i = 1; i < node_count; ++i) add(i, uni(0, i - 1));
  for (int i = 0; i < node_count; ++i) {
    int nearest = -1;
    for (int j = 0; j < node_count; ++j) {
      if (j != i && (nearest < 0 || dist(i, j) < dist(i, nearest))) nearest = j;
    }
    add(i, nearest);
  }

  const bool tie_scores = uni(0, 3) == 0;
  std::vector<Poi> pois;
  for (int i = 0; i < n; ++i) {
    Poi p;
    p.id = static_cast<PoiId>(i);
    // Occasionally stack two POIs on one node.
    p.node = (i > 0 && uni(0, 9) == 0) ? pois[uni(0, i - 1)].node : uni(0, node_count - 1);
    p.category = static_cast<CategoryId>(uni(0, m - 1));
    p.score = tie_scores ? 10.0 * uni(1, 3) : uni(1, 100);
    p.visit_seconds = uni(0, 20);
    pois.push_back(p);
  }
  Instance inst(g, std::move(pois), static_cast<std::uint32_t>(m));

  Query q;
  q.s = uni(0, node_count - 1);
  q.d = uni(0, 4) == 0 ? q.s : uni(0, node_count - 1);
  for (int k = 0; k < m; ++k) q.max_k.push_back(uni(0, 9) == 0 ? 0u : static_cast<std::uint32_t>(uni(1, 3)));

  const RoadNetwork& net = inst.network();
  const auto from_s = net.shortest_from(q.s);
  const auto from_d = net.shortest_from(q.d);
  const Seconds direct = from_s[*net.index_of(q.d)];
  double detour = 0;
  for (const Poi& p : inst.pois()) {
    const auto idx = *net.index_of(p.node);
    detour += static_cast<double>(from_s[idx] + p.visit_seconds + from_d[idx] - direct);
  }
  detour /= n;
  const double factor = std::uniform_real_distribution<double>(0.3, 3.0)(rng);
  q.t_max = std::max<Seconds>(1, direct + static_cast<Seconds>(factor * detour));
  return CorpusCase{seed, std::move(inst), std::move(q)};
}

inline std::vector<CorpusCase> small_corpus(std::size_t count, std::uint64_t base_seed = 1,
                                            std::uint32_t max_pois = 12) {
  std::vector<CorpusCase> cases;
  cases.reserve(count);
  for (std::size_t i = 0; i < count; ++i) cases.push_back(random_case(base_seed + i, max_pois));
  return cases;
}

}  // namespace opmpc::testing
