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

#include "mdseca/verify.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>

namespace mdseca {

namespace {

PropertyCheck named_check(std::string name) {
  PropertyCheck check;
  check.name = std::move(name);
  return check;
}

// BFS inside the subgraph induced by `members`; returns the largest distance
// and a witness pair, or nullopt distance if the subgraph is disconnected.
struct InducedDiameter {
  std::optional<int> diameter;
  NodeId from = 0;
  NodeId to = 0;
};

InducedDiameter induced_diameter(const std::vector<NodeId>& members,
                                 const NetworkGraph& graph) {
  InducedDiameter result;
  result.diameter = 0;
  if (members.empty()) return result;
  std::vector<int> dist(graph.size());
  std::vector<char> inside(graph.size(), 0);
  for (NodeId u : members) inside[u] = 1;
  for (NodeId source : members) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[source] = 0;
    std::deque<NodeId> queue{source};
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (NodeId v : graph.neighbors(u)) {
        if (inside[v] && dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (NodeId target : members) {
      if (dist[target] < 0) {
        return {std::nullopt, source, target};
      }
      if (dist[target] > *result.diameter) {
        result = {dist[target], source, target};
      }
    }
  }
  return result;
}

void fail(PropertyCheck& check, std::size_t cluster_id,
          std::vector<NodeId> nodes, std::string note) {
  if (!check.passed) return;  // keep the first witness
  check.passed = false;
  check.cluster_id = cluster_id;
  check.witness_nodes = std::move(nodes);
  check.notes.push_back(std::move(note));
}

}  // namespace

bool PropertyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const PropertyCheck& c) { return c.passed; });
}

const PropertyCheck* PropertyReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

PropertyCheck check_cluster_diameter(const ClusterState& state,
                                     const NetworkGraph& graph) {
  PropertyCheck check = named_check("cluster_diameter");
  for (const auto& cluster : state.clusters) {
    const auto d = induced_diameter(cluster.members, graph);
    if (!d.diameter) {
      fail(check, cluster.id, {d.from, d.to},
           "cluster " + std::to_string(cluster.id) + " is not connected");
    } else if (*d.diameter > 3) {
      fail(check, cluster.id, {d.from, d.to},
           "cluster " + std::to_string(cluster.id) + " has diameter " +
               std::to_string(*d.diameter));
    }
  }
  return check;
}

PropertyCheck check_double_star(const ClusterState& state,
                                const NetworkGraph& graph) {
  PropertyCheck check = named_check("double_star");
  std::size_t stars = 0;
  for (const auto& cluster : state.clusters) {
    const NodeId m = cluster.master;
    if (!cluster.proxy) {
      ++stars;
      for (NodeId s : cluster.slaves()) {
        if (!graph.adjacent(m, s)) {
          fail(check, cluster.id, {s},
               "slave " + std::to_string(s) + " is not adjacent to master " +
                   std::to_string(m));
        }
      }
      continue;
    }
    const NodeId p = *cluster.proxy;
    if (!graph.adjacent(m, p)) {
      fail(check, cluster.id, {m, p},
           "master and proxy of cluster " + std::to_string(cluster.id) +
               " are not adjacent");
      continue;
    }
    for (NodeId s : cluster.slaves()) {
      if (!graph.adjacent(m, s) && !graph.adjacent(p, s)) {
        fail(check, cluster.id, {s},
             "slave " + std::to_string(s) + " touches neither " +
                 std::to_string(m) + " nor " + std::to_string(p));
      }
    }
  }
  if (stars > 0) {
    check.notes.push_back(std::to_string(stars) +
                          " cluster(s) without a proxy checked as stars");
  }
  return check;
}

PropertyCheck check_partition(const ClusterState& state,
                              const NetworkGraph& graph, bool require_cover) {
  PropertyCheck check = named_check("partition");
  std::vector<std::size_t> seen(graph.size(), 0);
  for (const auto& cluster : state.clusters) {
    for (NodeId u : cluster.members) {
      if (u >= graph.size()) {
        fail(check, cluster.id, {u}, "member " + std::to_string(u) +
                                         " is not a node of the graph");
        continue;
      }
      if (seen[u] != 0) {
        fail(check, cluster.id, {u},
             "node " + std::to_string(u) + " is in clusters " +
                 std::to_string(seen[u]) + " and " +
                 std::to_string(cluster.id));
      }
      seen[u] = cluster.id;
    }
    if (!cluster.contains(cluster.master) ||
        (cluster.proxy && !cluster.contains(*cluster.proxy))) {
      fail(check, cluster.id, {cluster.master},
           "cluster " + std::to_string(cluster.id) +
               " does not contain its own leaders");
    }
  }
  if (!require_cover) return check;
  for (NodeId u = 0; u < graph.size(); ++u) {
    if (seen[u] == 0) {
      fail(check, 0, {u}, "node " + std::to_string(u) + " is in no cluster");
    } else if (u < state.statuses.size()) {
      const NodeStatus s = state.statuses[u];
      if (s == NodeStatus::kUnclustered || s == NodeStatus::kHiddenMasterII) {
        fail(check, seen[u], {u},
             "node " + std::to_string(u) + " is clustered but has status " +
                 std::string(to_string(s)));
      }
    }
  }
  return check;
}

PropertyCheck check_dominance(const ClusterState& state, const HopMatrix& hop) {
  PropertyCheck check = named_check("dominance");
  for (const auto& cluster : state.clusters) {
    for (NodeId s : cluster.slaves()) {
      auto within = [&](NodeId leader) {
        const auto d = hop.at(s, leader);
        return d && *d <= 2;
      };
      if (!within(cluster.master) && !(cluster.proxy && within(*cluster.proxy))) {
        fail(check, cluster.id, {s},
             "slave " + std::to_string(s) +
                 " is more than 2 hops from its master and proxy");
      }
    }
  }
  return check;
}

PropertyCheck check_master_independence(const ClusterState& state,
                                        const NetworkGraph& graph) {
  PropertyCheck check = named_check("master_independence");
  for (std::size_t i = 0; i < state.clusters.size(); ++i) {
    for (std::size_t j = i + 1; j < state.clusters.size(); ++j) {
      const NodeId a = state.clusters[i].master;
      const NodeId b = state.clusters[j].master;
      if (graph.adjacent(a, b)) {
        fail(check, state.clusters[i].id, {a, b},
             "masters " + std::to_string(a) + " and " + std::to_string(b) +
                 " are adjacent");
        check.witness_edges.emplace_back(a, b);
      }
    }
  }
  return check;
}

PropertyCheck check_dominance_and_independence(const ClusterState& state,
                                               const NetworkGraph& graph,
                                               const HopMatrix& hop) {
  PropertyCheck dominance = check_dominance(state, hop);
  PropertyCheck independence = check_master_independence(state, graph);
  PropertyCheck check = named_check("dominance_and_independence");
  for (const PropertyCheck* part : {&dominance, &independence}) {
    if (part->passed) continue;
    check.passed = false;
    if (!check.cluster_id) check.cluster_id = part->cluster_id;
    check.witness_nodes.insert(check.witness_nodes.end(),
                               part->witness_nodes.begin(),
                               part->witness_nodes.end());
    check.witness_edges.insert(check.witness_edges.end(),
                               part->witness_edges.begin(),
                               part->witness_edges.end());
    check.notes.insert(check.notes.end(), part->notes.begin(),
                       part->notes.end());
  }
  return check;
}

bool check_efficient_edge_domination(std::span<const Edge> edge_set,
                                     const NetworkGraph& graph) {
  // Number of chosen edges incident to each vertex.
  std::vector<int> incident(graph.size(), 0);
  std::vector<Edge> chosen;
  for (const Edge& e : edge_set) {
    if (e.v >= graph.size() || !graph.adjacent(e.u, e.v)) {
      throw InvalidArgument("edge (" + std::to_string(e.u) + ", " +
                            std::to_string(e.v) + ") is not in the graph");
    }
    chosen.push_back(e);
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  for (const Edge& e : chosen) {
    ++incident[e.u];
    ++incident[e.v];
  }
  for (const Edge& f : graph.edges()) {
    // A chosen edge equal to f is counted at both endpoints.
    const bool self = std::binary_search(chosen.begin(), chosen.end(), f);
    const int dominators = incident[f.u] + incident[f.v] - (self ? 1 : 0);
    if (dominators != 1) return false;
  }
  return true;
}

std::size_t line_graph_domination_number(const NetworkGraph& graph) {
  const auto edges = graph.edges();
  const std::size_t m = edges.size();
  if (m > kMaxBruteForceEdges) {
    throw SizeLimitError("line graph domination needs at most " +
                         std::to_string(kMaxBruteForceEdges) + " edges, got " +
                         std::to_string(m));
  }
  if (m == 0) return 0;
  std::vector<std::uint32_t> closed(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (edges[i].touches(edges[j].u) || edges[i].touches(edges[j].v)) {
        closed[i] |= std::uint32_t{1} << j;
      }
    }
  }
  const std::uint32_t all = (std::uint32_t{1} << m) - 1;
  for (std::size_t k = 1; k <= m; ++k) {
    // Gosper's hack over all k-subsets of m edges.
    std::uint32_t subset = (std::uint32_t{1} << k) - 1;
    while (subset <= all) {
      std::uint32_t covered = 0;
      for (std::uint32_t rest = subset; rest != 0; rest &= rest - 1) {
        covered |= closed[std::countr_zero(rest)];
      }
      if (covered == all) return k;
      const std::uint32_t low = subset & (~subset + 1);
      const std::uint32_t ripple = subset + low;
      subset = (((ripple ^ subset) >> 2) / low) | ripple;
    }
  }
  return m;
}

std::vector<Edge> leader_edges(const ClusterState& state) {
  std::vector<Edge> out;
  for (const auto& c : state.clusters) {
    if (c.proxy) out.emplace_back(c.master, *c.proxy);
  }
  return out;
}

PropertyReport verify_state(const ClusterState& state,
                            const NetworkGraph& graph, const HopMatrix& hop,
                            const VerifyOptions& options) {
  PropertyReport report;
  report.checks.push_back(check_cluster_diameter(state, graph));
  report.checks.push_back(check_double_star(state, graph));
  report.checks.push_back(check_partition(state, graph, options.require_cover));
  report.checks.push_back(check_dominance_and_independence(state, graph, hop));

  if (options.check_edge_domination) {
    PropertyCheck eds = named_check("efficient_edge_domination");
    const auto leaders = leader_edges(state);
    if (!check_efficient_edge_domination(leaders, graph)) {
      eds.passed = false;
      eds.witness_edges = leaders;
      // Name the first edge dominated zero or several times.
      for (const Edge& f : graph.edges()) {
        const auto hits = std::count_if(
            leaders.begin(), leaders.end(), [&](const Edge& e) {
              return e.touches(f.u) || e.touches(f.v);
            });
        if (hits != 1) {
          eds.witness_nodes = {f.u, f.v};
          eds.notes.push_back("edge (" + std::to_string(f.u) + ", " +
                              std::to_string(f.v) + ") is dominated " +
                              std::to_string(hits) + " times");
          break;
        }
      }
    } else if (graph.edge_count() <= kMaxBruteForceEdges) {
      const std::size_t gamma = line_graph_domination_number(graph);
      if (gamma != leaders.size()) {
        eds.passed = false;
        eds.witness_edges = leaders;
        eds.notes.push_back("leader edges: " + std::to_string(leaders.size()) +
                            ", line graph domination number: " +
                            std::to_string(gamma));
      }
    } else {
      eds.notes.push_back("domination number not computed (too many edges)");
    }
    report.checks.push_back(std::move(eds));
  }

  int radius = -1;
  int diameter = -1;
  bool connected = true;
  for (NodeId u = 0; u < hop.size() && connected; ++u) {
    int ecc = 0;
    for (NodeId v = 0; v < hop.size(); ++v) {
      const auto d = hop.at(u, v);
      if (!d) {
        connected = false;
        break;
      }
      ecc = std::max(ecc, *d);
    }
    radius = radius < 0 ? ecc : std::min(radius, ecc);
    diameter = std::max(diameter, ecc);
  }
  if (connected && hop.size() > 0) {
    report.radius = radius;
    report.diameter = diameter;
  }
  return report;
}

}  // namespace mdseca
