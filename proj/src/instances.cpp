#include "opmpc/instances.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "opmpc/errors.hpp"

namespace opmpc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void validate_pois(const PoiSpec& spec, std::uint64_t node_count) {
  if (spec.poi_count > node_count) {
    throw InputError("cannot place " + std::to_string(spec.poi_count) +
                     " pois on " + std::to_string(node_count) + " nodes");
  }
  if (spec.category_count == 0) throw InputError("need at least one category");
  if (spec.visit_min < 0 || spec.visit_min > spec.visit_max) {
    throw InputError("visit range must satisfy 0 <= min <= max");
  }
  if (!(spec.score_min >= 0.0) || !(spec.score_min <= spec.score_max)) {
    throw InputError("score range must satisfy 0 <= min <= max");
  }
}

std::vector<Poi> scatter_pois(const PoiSpec& spec, std::vector<NodeId> nodes,
                              std::uint64_t seed) {
  std::mt19937_64 place(derive_seed(seed, "placement"));
  // Partial Fisher-Yates: the first poi_count slots become a uniform sample.
  for (std::size_t i = 0; i < spec.poi_count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, nodes.size() - 1);
    std::swap(nodes[i], nodes[pick(place)]);
  }

  std::mt19937_64 attrs(derive_seed(seed, "attributes"));
  std::uniform_int_distribution<CategoryId> category(0, spec.category_count - 1);
  std::uniform_int_distribution<Seconds> visit(spec.visit_min, spec.visit_max);
  std::uniform_real_distribution<double> score(spec.score_min, spec.score_max);
  std::vector<Poi> pois;
  pois.reserve(spec.poi_count);
  for (PoiId i = 0; i < spec.poi_count; ++i) {
    Poi p;
    p.id = i;
    p.node = nodes[i];
    p.category = category(attrs);
    p.visit_seconds = visit(attrs);
    p.score = spec.score_min == spec.score_max ? spec.score_min : score(attrs);
    pois.push_back(p);
  }
  return pois;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : stream) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(seed ^ splitmix64(h));
}

void GridSpec::validate() const {
  if (side == 0) throw InputError("grid side must be positive");
  if (edge_seconds < 0) throw InputError("edge seconds must not be negative");
  validate_pois(pois, std::uint64_t{side} * side);
}

void SpiderSpec::validate() const {
  if (sides < 3) throw InputError("a spider needs at least 3 sides");
  if (levels == 0) throw InputError("a spider needs at least one level");
  if (radial_seconds < 0 || innermost_side_seconds < 0) {
    throw InputError("edge seconds must not be negative");
  }
  validate_pois(pois, std::uint64_t{sides} * levels);
}

Instance gen_grid(const GridSpec& spec) {
  spec.validate();
  const NodeId n = spec.side;
  TravelGraph graph;
  graph.nodes.reserve(n * n);
  for (NodeId i = 0; i < n * n; ++i) graph.nodes.push_back(i);
  graph.edges.reserve(2 * n * (n - 1));
  for (NodeId r = 0; r < n; ++r) {
    for (NodeId c = 0; c < n; ++c) {
      const NodeId id = r * n + c;
      if (c + 1 < n) graph.edges.push_back({id, id + 1, spec.edge_seconds});
      if (r + 1 < n) graph.edges.push_back({id, id + n, spec.edge_seconds});
    }
  }
  auto pois = scatter_pois(spec.pois, graph.nodes, spec.seed);
  return Instance(std::move(graph), std::move(pois), spec.pois.category_count);
}

Instance gen_spider(const SpiderSpec& spec) {
  spec.validate();
  const NodeId sides = spec.sides;
  TravelGraph graph;
  for (NodeId level = 0; level < spec.levels; ++level) {
    for (NodeId k = 0; k < sides; ++k) graph.nodes.push_back(level * sides + k);
  }
  for (NodeId level = 0; level < spec.levels; ++level) {
    const Seconds side_seconds = spec.innermost_side_seconds * (level + 1);
    for (NodeId k = 0; k < sides; ++k) {
      graph.edges.push_back(
          {level * sides + k, level * sides + (k + 1) % sides, side_seconds});
      if (level + 1 < spec.levels) {
        graph.edges.push_back(
            {level * sides + k, (level + 1) * sides + k, spec.radial_seconds});
      }
    }
  }
  auto pois = scatter_pois(spec.pois, graph.nodes, spec.seed);
  return Instance(std::move(graph), std::move(pois), spec.pois.category_count);
}

std::vector<Query> gen_queries(const Instance& instance, const QuerySpec& spec) {
  if (spec.count == 0) throw InputError("query count must be positive");
  if (spec.t_max <= 0) throw InputError("t_max must be positive");
  if (spec.max_k.size() != instance.category_count()) {
    throw InputError("expected " + std::to_string(instance.category_count()) +
                     " category caps, got " + std::to_string(spec.max_k.size()));
  }
  const RoadNetwork& net = instance.network();
  if (net.node_count() == 0) throw InputError("instance has no nodes");

  constexpr int kMaxDraws = 10000;
  std::mt19937_64 rng(derive_seed(spec.seed, "queries"));
  std::uniform_int_distribution<std::size_t> node(0, net.node_count() - 1);
  std::vector<Query> queries;
  queries.reserve(spec.count);
  for (std::uint32_t q = 0; q < spec.count; ++q) {
    bool found = false;
    for (int draw = 0; draw < kMaxDraws && !found; ++draw) {
      const std::size_t s = node(rng);
      const std::size_t d = node(rng);
      const Seconds direct = net.shortest_from(net.node_at(s))[d];
      if (direct < spec.t_max) {
        queries.push_back({net.node_at(s), net.node_at(d), spec.t_max, spec.max_k});
        found = true;
      }
    }
    if (!found) {
      throw InputError("no start/destination pair with c(s, d) < t_max after " +
                       std::to_string(kMaxDraws) + " draws");
    }
  }
  return queries;
}

}  // namespace opmpc
