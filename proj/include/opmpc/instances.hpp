#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "opmpc/model.hpp"

namespace opmpc {

// Ranges shared by both generators. Visiting times are drawn uniformly from
// [visit_min, visit_max], scores uniformly from [score_min, score_max],
// categories uniformly from 0..category_count-1, and POIs are placed on
// distinct nodes.
struct PoiSpec {
  std::uint32_t poi_count = 3000;
  std::uint32_t category_count = 4;
  Seconds visit_min = 180;
  Seconds visit_max = 3600;
  double score_min = 1.0;
  double score_max = 100.0;
};

// side x side lattice with 4-neighbour edges.
struct GridSpec {
  std::uint32_t side = 100;
  Seconds edge_seconds = 60;
  PoiSpec pois;
  std::uint64_t seed = 0;

  void validate() const;
};

// `levels` concentric regular polygons of `sides` vertices each. Level l
// (1-based, innermost first) has sides of innermost_side_seconds * l, the
// way a regular polygon's side grows linearly with its radius; matching
// vertices of consecutive levels are joined by radial edges.
struct SpiderSpec {
  std::uint32_t sides = 100;
  std::uint32_t levels = 100;
  Seconds radial_seconds = 100;
  Seconds innermost_side_seconds = 8;
  PoiSpec pois;
  std::uint64_t seed = 0;

  void validate() const;
};

struct QuerySpec {
  Seconds t_max = 7200;
  std::vector<std::uint32_t> max_k;
  std::uint32_t count = 25;
  std::uint64_t seed = 0;
};

// Independent, reproducible seed for a named random stream.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);

Instance gen_grid(const GridSpec& spec);
Instance gen_spider(const SpiderSpec& spec);

// Start and destination drawn uniformly from all graph nodes, redrawn until
// c(s, d) < t_max. Throws InputError if no pair qualifies after a bounded
// number of draws.
std::vector<Query> gen_queries(const Instance& instance, const QuerySpec& spec);

}  // namespace opmpc
