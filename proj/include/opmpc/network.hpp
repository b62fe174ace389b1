#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace opmpc {

// Travel and visiting times are whole seconds.
using Seconds = std::int64_t;
using NodeId = std::int64_t;

inline constexpr Seconds kUnreachable = std::numeric_limits<Seconds>::max();

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Seconds seconds = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Raw undirected road network as read from disk or produced by a generator.
struct TravelGraph {
  std::vector<NodeId> nodes;
  std::vector<Edge> edges;

  friend bool operator==(const TravelGraph&, const TravelGraph&) = default;
};

// Compressed adjacency view of a TravelGraph. Construction validates the
// graph: unique node ids, known endpoints, no self-loops, no parallel edges,
// non-negative weights.
class RoadNetwork {
 public:
  RoadNetwork() = default;
  explicit RoadNetwork(const TravelGraph& graph);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return arcs_.size() / 2; }
  bool contains(NodeId node) const { return index_.contains(node); }
  std::optional<std::size_t> index_of(NodeId node) const;
  NodeId node_at(std::size_t index) const { return ids_[index]; }

  // Dijkstra from `source`; entries are indexed like node_at() and hold
  // kUnreachable for nodes in another component.
  std::vector<Seconds> shortest_from(NodeId source) const;

 private:
  std::vector<NodeId> ids_;
  std::unordered_map<NodeId, std::size_t> index_;
  std::vector<std::size_t> offsets_;
  std::vector<std::pair<std::size_t, Seconds>> arcs_;
};

// Symmetric all-pairs travel times over a set of terminal nodes.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  // `terminals` must be distinct; `row_major` has terminals.size()^2 entries.
  DistanceMatrix(std::vector<NodeId> terminals, std::vector<Seconds> row_major);

  std::size_t size() const { return terminals_.size(); }
  std::span<const NodeId> terminals() const { return terminals_; }
  std::optional<std::size_t> index_of(NodeId node) const;

  Seconds at(std::size_t i, std::size_t j) const {
    return data_[i * terminals_.size() + j];
  }
  // Throws std::out_of_range when either node is not a terminal.
  Seconds between(NodeId a, NodeId b) const;

  friend bool operator==(const DistanceMatrix& a, const DistanceMatrix& b) {
    return a.terminals_ == b.terminals_ && a.data_ == b.data_;
  }

 private:
  std::vector<NodeId> terminals_;
  std::unordered_map<NodeId, std::size_t> index_;
  std::vector<std::int32_t> data_;
};

// Complete metric graph over `needed` (duplicates collapsed, first occurrence
// order kept): one Dijkstra per needed node. Throws DisconnectedGraph naming
// the first pair without a path, std::invalid_argument for unknown nodes.
DistanceMatrix metric_closure(const RoadNetwork& network,
                              std::span<const NodeId> needed);
DistanceMatrix metric_closure(const TravelGraph& graph,
                              std::span<const NodeId> needed);

}  // namespace opmpc
