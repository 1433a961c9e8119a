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

#ifndef MDSECA_VERIFY_HPP_
#define MDSECA_VERIFY_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdseca/cluster.hpp"
#include "mdseca/graph.hpp"

namespace mdseca {

// Outcome of one structural check. A failed check always names a witness.
struct PropertyCheck {
  std::string name;
  bool passed = true;
  std::optional<std::size_t> cluster_id;
  std::vector<NodeId> witness_nodes;
  std::vector<Edge> witness_edges;
  std::vector<std::string> notes;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  // Radius and diameter of G; absent when G is disconnected.
  std::optional<int> radius;
  std::optional<int> diameter;

  bool all_passed() const;
  const PropertyCheck* find(std::string_view name) const;
};

// Diameter of every cluster's member-induced subgraph is at most 3.
PropertyCheck check_cluster_diameter(const ClusterState& state,
                                     const NetworkGraph& graph);

// (m, p) is an edge and every slave touches m or p, so the embedded double
// star exists and (m, p) dominates all of its edges.
PropertyCheck check_double_star(const ClusterState& state,
                                const NetworkGraph& graph);

// Member sets are pairwise disjoint; with `require_cover`, every node lies in
// exactly one cluster and holds a clustered status.
PropertyCheck check_partition(const ClusterState& state,
                              const NetworkGraph& graph,
                              bool require_cover = true);

// Slaves lie within 2 hops of their own master or proxy.
PropertyCheck check_dominance(const ClusterState& state, const HopMatrix& hop);
// No two masters are adjacent.
PropertyCheck check_master_independence(const ClusterState& state,
                                        const NetworkGraph& graph);
// Both of the above as one entry.
PropertyCheck check_dominance_and_independence(const ClusterState& state,
                                               const NetworkGraph& graph,
                                               const HopMatrix& hop);

// Every edge of G shares an endpoint with exactly one member of `edge_set`
// (members dominate themselves). Throws InvalidArgument for edges not in G.
bool check_efficient_edge_domination(std::span<const Edge> edge_set,
                                     const NetworkGraph& graph);

inline constexpr std::size_t kMaxBruteForceEdges = 20;

// Minimum edge dominating set size by exhaustive search. Throws
// SizeLimitError beyond kMaxBruteForceEdges edges.
std::size_t line_graph_domination_number(const NetworkGraph& graph);

// The (master, proxy) edges of all clusters that have a proxy.
std::vector<Edge> leader_edges(const ClusterState& state);

struct VerifyOptions {
  bool require_cover = true;
  // Also check the leader edges for efficient edge domination (meaningful
  // only for perfect clusterings).
  bool check_edge_domination = false;
};

PropertyReport verify_state(const ClusterState& state,
                            const NetworkGraph& graph, const HopMatrix& hop,
                            const VerifyOptions& options = {});

}  // namespace mdseca

#endif  // MDSECA_VERIFY_HPP_
