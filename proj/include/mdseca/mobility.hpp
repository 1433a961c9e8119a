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

#ifndef MDSECA_MOBILITY_HPP_
#define MDSECA_MOBILITY_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdseca/cluster.hpp"
#include "mdseca/graph.hpp"
#include "mdseca/metrics.hpp"

namespace mdseca {

struct Scenario {
  std::size_t node_count = 0;
  double terrain_size = 0.0;
  double range = 0.0;
  double v_max = 0.0;
  double broadcast_interval = 1.0;
  double dt = 1.0;
  std::size_t steps = 0;
  double ns_threshold = 100.0;
  std::array<double, 6> alphas{1.0 / 6, 1.0 / 6, 1.0 / 6,
                               1.0 / 6, 1.0 / 6, 1.0 / 6};
  std::uint64_t seed = 0;

  // Throws InvalidArgument naming the offending field.
  void validate() const;
  WeightConfig weight_config() const;
};

enum class MaintenanceKind { kBoundaryExit, kFindCH, kAck, kJoin, kBecomeMaster };

std::string_view to_string(MaintenanceKind kind);

struct MaintenanceEvent {
  double time = 0.0;
  MaintenanceKind kind = MaintenanceKind::kBoundaryExit;
  NodeId node = 0;
  std::optional<ElectedPair> target;

  friend bool operator==(const MaintenanceEvent&,
                         const MaintenanceEvent&) = default;
};

// Random-direction step: every node draws a heading in [0, 2pi) and a speed
// in [0, v_max], moves speed * dt and reflects off the terrain border.
std::vector<Position> step_positions(std::span<const Position> positions,
                                     double v_max, double dt,
                                     double terrain_size, std::mt19937_64& rng);

struct RefreshResult {
  NetworkGraph graph;
  // One BoundaryExit per slave adjacent to neither its master nor its proxy,
  // ascending by node.
  std::vector<MaintenanceEvent> exits;
  std::vector<std::string> notes;
};

// Rebuilds the topology from the current positions. A cluster whose master
// lost its link to the proxy hands over: the proxy becomes master, its best
// adjacent slave becomes proxy and the old master is demoted to slave (and
// exits like any other slave when out of reach).
RefreshResult hello_refresh(std::span<const Position> positions, double range,
                            ClusterState& state, const WeightRanking& ranking,
                            double time);

// Re-affiliation of one node: it leaves its cluster, every adjacent master or
// proxy acknowledges, and the node joins the best acknowledger's cluster. With
// no acknowledger it becomes a master on its own.
std::vector<MaintenanceEvent> find_ch(NodeId node, ClusterState& state,
                                      const NetworkGraph& graph,
                                      const WeightRanking& ranking,
                                      double time);

struct StepSummary {
  std::size_t step = 0;
  double time = 0.0;
  bool refreshed = false;
  std::size_t exits = 0;
  std::size_t resolutions = 0;
  bool partition_ok = true;
  bool dominance_ok = true;
  bool masters_independent = true;
  std::vector<std::string> warnings;
};

struct SimulationOptions {
  bool recompute_weights = false;
  bool force_recluster = false;
};

struct SimulationResult {
  std::vector<Position> initial_positions;
  std::vector<Position> final_positions;
  ClusteringResult initial;
  ClusterState final_state;
  NetworkGraph final_graph;
  std::vector<NodeMetrics> final_metrics;
  std::vector<MaintenanceEvent> events;
  std::vector<StepSummary> summaries;

  bool all_checks_passed() const;
};

// Throws DisconnectedGraphError when the initial topology is disconnected.
SimulationResult run_simulation(const Scenario& scenario,
                                const SimulationOptions& options = {});

}  // namespace mdseca

#endif  // MDSECA_MOBILITY_HPP_
