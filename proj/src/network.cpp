#include "opmpc/network.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>

#include "opmpc/errors.hpp"

namespace opmpc {

RoadNetwork::RoadNetwork(const TravelGraph& graph) : ids_(graph.nodes) {
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw InputError("duplicate node id " + std::to_string(ids_[i]));
    }
  }

  std::vector<std::size_t> degree(ids_.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  ends.reserve(graph.edges.size());
  for (const Edge& e : graph.edges) {
    auto u = index_of(e.u);
    auto v = index_of(e.v);
    if (!u || !v) {
      throw InputError("edge (" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + ") references an unknown node");
    }
    if (*u == *v) {
      throw InputError("self-loop on node " + std::to_string(e.u));
    }
    if (e.seconds < 0) {
      throw InputError("negative travel time on edge (" + std::to_string(e.u) +
                       ", " + std::to_string(e.v) + ")");
    }
    ends.emplace_back(std::min(*u, *v), std::max(*u, *v));
    ++degree[*u];
    ++degree[*v];
  }

  auto sorted = ends;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw InputError("more than one edge between nodes " +
                     std::to_string(ids_[dup->first]) + " and " +
                     std::to_string(ids_[dup->second]));
  }

  offsets_.assign(ids_.size() + 1, 0);
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    offsets_[i + 1] = offsets_[i] + degree[i];
  }
  arcs_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t k = 0; k < ends.size(); ++k) {
    const auto [u, v] = ends[k];
    const Seconds w = graph.edges[k].seconds;
    arcs_[fill[u]++] = {v, w};
    arcs_[fill[v]++] = {u, w};
  }
}

std::optional<std::size_t> RoadNetwork::index_of(NodeId node) const {
  auto it = index_.find(node);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Seconds> RoadNetwork::shortest_from(NodeId source) const {
  auto src = index_of(source);
  if (!src) {
    throw std::invalid_argument("unknown node " + std::to_string(source));
  }
  std::vector<Seconds> dist(ids_.size(), kUnreachable);
  using Entry = std::pair<Seconds, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[*src] = 0;
  heap.emplace(0, *src);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue;
    for (std::size_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
      const auto [v, w] = arcs_[k];
      if (d + w < dist[v]) {
        dist[v] = d + w;
        heap.emplace(dist[v], v);
      }
    }
  }
  return dist;
}

DistanceMatrix::DistanceMatrix(std::vector<NodeId> terminals,
                               std::vector<Seconds> row_major)
    : terminals_(std::move(terminals)) {
  const std::size_t n = terminals_.size();
  if (row_major.size() != n * n) {
    throw std::invalid_argument("distance matrix has wrong number of entries");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(terminals_[i], i).second) {
      throw std::invalid_argument("duplicate terminal " +
                                  std::to_string(terminals_[i]));
    }
  }
  data_.reserve(row_major.size());
  for (Seconds s : row_major) {
    if (s < 0 || s > std::numeric_limits<std::int32_t>::max()) {
      throw std::invalid_argument("travel time out of range: " +
                                  std::to_string(s));
    }
    data_.push_back(static_cast<std::int32_t>(s));
  }
}

std::optional<std::size_t> DistanceMatrix::index_of(NodeId node) const {
  auto it = index_.find(node);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Seconds DistanceMatrix::between(NodeId a, NodeId b) const {
  auto i = index_of(a);
  auto j = index_of(b);
  if (!i || !j) {
    throw std::out_of_range("node is not a terminal of the distance matrix");
  }
  return at(*i, *j);
}

DistanceMatrix metric_closure(const RoadNetwork& network,
                              std::span<const NodeId> needed) {
  std::vector<NodeId> terminals;
  std::vector<std::size_t> graph_index;
  std::unordered_map<NodeId, std::size_t> seen;
  for (NodeId node : needed) {
    if (seen.contains(node)) continue;
    auto idx = network.index_of(node);
    if (!idx) {
      throw std::invalid_argument("unknown node " + std::to_string(node));
    }
    seen.emplace(node, terminals.size());
    terminals.push_back(node);
    graph_index.push_back(*idx);
  }

  const std::size_t n = terminals.size();
  std::vector<Seconds> data(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto dist = network.shortest_from(terminals[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const Seconds d = dist[graph_index[j]];
      if (d == kUnreachable) throw DisconnectedGraph(terminals[i], terminals[j]);
      data[i * n + j] = d;
    }
  }
  return DistanceMatrix(std::move(terminals), std::move(data));
}

DistanceMatrix metric_closure(const TravelGraph& graph,
                              std::span<const NodeId> needed) {
  return metric_closure(RoadNetwork(graph), needed);
}

}  // namespace opmpc
