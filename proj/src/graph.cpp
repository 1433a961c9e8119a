// Copyright 2026 The mdseca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mdseca/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <string>

namespace mdseca {

namespace {

std::string describe_components(
    const std::vector<std::vector<NodeId>>& components) {
  std::ostringstream out;
  out << "graph is disconnected (" << components.size() << " components:";
  for (const auto& component : components) {
    out << " {";
    for (std::size_t i = 0; i < component.size(); ++i) {
      out << (i ? "," : "") << component[i];
    }
    out << "}";
  }
  out << ")";
  return out.str();
}

}  // namespace

UnreachableNodeError::UnreachableNodeError(NodeId from, NodeId to)
    : std::runtime_error("node " + std::to_string(to) +
                         " is unreachable from node " + std::to_string(from)),
      from_(from),
      to_(to) {}

DisconnectedGraphError::DisconnectedGraphError(
    std::vector<std::vector<NodeId>> components)
    : std::runtime_error(describe_components(components)),
      components_(std::move(components)) {}

int HopMatrix::checked(NodeId u, NodeId v) const {
  const int h = hops_(u, v);
  if (h == kUnreachable) throw UnreachableNodeError(u, v);
  return h;
}

NetworkGraph::NetworkGraph(std::size_t node_count, std::optional<double> range)
    : range_(range),
      adjacency_(node_count * node_count, 0),
      neighbors_(node_count) {}

void NetworkGraph::add_edge(NodeId u, NodeId v) {
  if (u >= size() || v >= size()) {
    throw InvalidArgument("edge (" + std::to_string(u) + ", " +
                          std::to_string(v) + ") references a missing node");
  }
  if (u == v) {
    throw InvalidArgument("self-loop on node " + std::to_string(u));
  }
  if (adjacent(u, v)) return;
  adjacency_[u * size() + v] = 1;
  adjacency_[v * size() + u] = 1;
  auto insert_sorted = [](std::vector<NodeId>& list, NodeId w) {
    list.insert(std::upper_bound(list.begin(), list.end(), w), w);
  };
  insert_sorted(neighbors_[u], v);
  insert_sorted(neighbors_[v], u);
  ++edge_count_;
}

std::vector<Edge> NetworkGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < size(); ++u) {
    for (NodeId v : neighbors_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<Position> deploy_random(std::size_t n, double terrain_size,
                                    std::mt19937_64& rng) {
  if (n == 0) throw InvalidArgument("node count must be positive");
  if (!(terrain_size > 0.0)) {
    throw InvalidArgument("terrain size must be positive");
  }
  std::uniform_real_distribution<double> coord(0.0, terrain_size);
  std::vector<Position> positions(n);
  for (auto& p : positions) {
    p.x = coord(rng);
    p.y = coord(rng);
  }
  return positions;
}

std::vector<Position> deploy_random(std::size_t n, double terrain_size,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return deploy_random(n, terrain_size, rng);
}

double euclidean_distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

NetworkGraph build_graph(std::span<const Position> positions, double range) {
  if (positions.empty()) throw InvalidArgument("no positions given");
  if (!(range > 0.0)) throw InvalidArgument("range must be positive");
  NetworkGraph graph(positions.size(), range);
  for (NodeId u = 0; u < positions.size(); ++u) {
    for (NodeId v = u + 1; v < positions.size(); ++v) {
      if (euclidean_distance(positions[u], positions[v]) <= range) {
        graph.add_edge(u, v);
      }
    }
  }
  return graph;
}

HopMatrix hop_distance_table(const NetworkGraph& graph) {
  const std::size_t n = graph.size();
  HopMatrix hop(n);
  std::vector<int> dist(n);
  std::deque<NodeId> queue;
  for (NodeId source = 0; source < n; ++source) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[source] = 0;
    queue.assign(1, source);
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (NodeId v : graph.neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (NodeId v = 0; v < n; ++v) {
      if (dist[v] >= 0) hop.set(source, v, dist[v]);
    }
  }
  return hop;
}

EuclidMatrix euclidean_distance_table(std::span<const Position> positions) {
  if (positions.empty()) throw InvalidArgument("no positions given");
  EuclidMatrix euclid(positions.size(), 0.0);
  for (NodeId u = 0; u < positions.size(); ++u) {
    for (NodeId v = u + 1; v < positions.size(); ++v) {
      const double d = euclidean_distance(positions[u], positions[v]);
      euclid(u, v) = d;
      euclid(v, u) = d;
    }
  }
  return euclid;
}

DistanceTables distance_tables(const NetworkGraph& graph,
                               std::span<const Position> positions) {
  return {hop_distance_table(graph), euclidean_distance_table(positions)};
}

std::vector<std::vector<NodeId>> connected_components(
    const NetworkGraph& graph) {
  std::vector<std::vector<NodeId>> components;
  std::vector<char> seen(graph.size(), 0);
  for (NodeId root = 0; root < graph.size(); ++root) {
    if (seen[root]) continue;
    std::vector<NodeId> component;
    std::vector<NodeId> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (NodeId v : graph.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

bool is_connected(const NetworkGraph& graph) {
  return connected_components(graph).size() <= 1;
}

}  // namespace mdseca
