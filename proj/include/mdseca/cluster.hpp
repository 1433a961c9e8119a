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

#ifndef MDSECA_CLUSTER_HPP_
#define MDSECA_CLUSTER_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdseca/graph.hpp"
#include "mdseca/metrics.hpp"

namespace mdseca {

enum class NodeStatus {
  kMaster,
  kProxy,
  kSlave,
  kHiddenMasterI,
  kHiddenMasterII,
  kUnclustered,
};

std::string_view to_string(NodeStatus status);
NodeStatus parse_node_status(std::string_view text);

struct ClusterRecord {
  std::size_t id = 0;
  NodeId master = 0;
  std::optional<NodeId> proxy;
  // Sorted; includes the master and the proxy.
  std::vector<NodeId> members;
  // Created by the adjustment phase (or by maintenance), not by formation.
  bool adjusted = false;

  bool contains(NodeId u) const;
  std::vector<NodeId> slaves() const;
};

struct ElectedPair {
  NodeId master = 0;
  std::optional<NodeId> proxy;

  friend bool operator==(const ElectedPair&, const ElectedPair&) = default;
};

enum class Phase { kFormation, kAdjustment };

// One step of formation or adjustment, in execution order.
struct ClusterEvent {
  Phase phase = Phase::kFormation;
  std::string action;
  NodeId node = 0;
  std::optional<NodeId> partner;
  std::vector<NodeId> nodes;
};

enum class PerfectionClass { kPerfect, kFairlyPerfect, kImperfect };

std::string_view to_string(PerfectionClass classification);

struct ClusterState {
  std::vector<ClusterRecord> clusters;
  std::vector<NodeStatus> statuses;
  // C after formation, C_A after adjustment.
  std::vector<NodeId> critical;
  std::vector<NodeId> hidden_masters_1;
  std::vector<NodeId> hidden_masters_2;
  // Nodes that failed the master distance test (P).
  std::vector<NodeId> deferred;
  std::vector<ClusterEvent> events;

  std::size_t node_count() const { return statuses.size(); }
  std::optional<std::size_t> cluster_index(NodeId u) const;
  std::vector<ElectedPair> pairs() const;
  bool is_leader(NodeId u) const {
    return statuses[u] == NodeStatus::kMaster ||
           statuses[u] == NodeStatus::kProxy;
  }
};

struct NeighborPartitions {
  // Neighbours outweighing u, Masters excluded.
  std::vector<NodeId> n_prime;
  // Neighbours that are neither Master nor Proxy and weigh less than u.
  std::vector<NodeId> n_dprime;
  // Neighbours adjacent to some Master.
  std::vector<NodeId> n_m;
};

NeighborPartitions neighbor_partitions(NodeId u, const ClusterState& state,
                                       const NetworkGraph& graph,
                                       const WeightRanking& ranking);

// Distance test for every master after the first: exactly 3 hops from one
// elected pair (and at least 3 from its partner), at least 3 from all others.
// A pair without a proxy counts its master twice.
bool master_eligibility(NodeId candidate, std::span<const ElectedPair> elected,
                        const HopMatrix& hop);

// Highest-ranked neighbour of `master` that is at least 3 hops from every
// previously elected master and proxy.
std::optional<NodeId> elect_proxy(NodeId master,
                                  std::span<const ElectedPair> elected,
                                  const NetworkGraph& graph,
                                  const WeightRanking& ranking,
                                  const HopMatrix& hop);

// Cluster formation. Throws DisconnectedGraphError on disconnected input.
ClusterState run_m_dsec(const NetworkGraph& graph, const HopMatrix& hop,
                        std::span<const NodeMetrics> metrics);

// Regroups the critical nodes of a formed state. Returns the state unchanged
// when there are none.
ClusterState run_adjusted(const ClusterState& formed, const NetworkGraph& graph,
                          std::span<const NodeMetrics> metrics);

PerfectionClass classify(const ClusterState& formed,
                         const ClusterState& adjusted);

struct ClusteringResult {
  ClusterState formed;
  ClusterState adjusted;
  PerfectionClass classification = PerfectionClass::kPerfect;
};

ClusteringResult cluster_network(const NetworkGraph& graph,
                                 const HopMatrix& hop,
                                 std::span<const NodeMetrics> metrics);

}  // namespace mdseca

#endif  // MDSECA_CLUSTER_HPP_
