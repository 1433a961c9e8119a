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

#include "mdseca/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mdseca/verify.hpp"

namespace mdseca {

namespace {

double reflect(double x, double size) {
  const double period = 2.0 * size;
  double folded = std::fmod(x, period);
  if (folded < 0.0) folded += period;
  return folded > size ? period - folded : folded;
}

std::size_t next_cluster_id(const ClusterState& state) {
  std::size_t id = 0;
  for (const auto& c : state.clusters) id = std::max(id, c.id);
  return id + 1;
}

ElectedPair pair_of(const ClusterRecord& c) { return {c.master, c.proxy}; }

std::vector<NodeMetrics> metrics_for(const NetworkGraph& graph,
                                     std::span<const Position> positions,
                                     const WeightConfig& config) {
  return compute_metrics(graph, distance_tables(graph, positions), config);
}

// Slaves of any cluster farther than 2 hops from both of their leaders,
// ignoring nodes whose re-affiliation is still pending.
bool dominance_holds(const ClusterState& state, const HopMatrix& hop,
                     const std::vector<char>& pending) {
  for (const auto& cluster : state.clusters) {
    for (NodeId s : cluster.slaves()) {
      if (pending[s]) continue;
      auto near = [&](NodeId leader) {
        const auto d = hop.at(s, leader);
        return d && *d <= 2;
      };
      if (!near(cluster.master) && !(cluster.proxy && near(*cluster.proxy))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

void Scenario::validate() const {
  if (node_count == 0) throw InvalidArgument("node_count must be positive");
  if (!(terrain_size > 0.0)) {
    throw InvalidArgument("terrain_size must be positive");
  }
  if (!(range > 0.0)) throw InvalidArgument("range must be positive");
  if (!(v_max >= 0.0)) throw InvalidArgument("v_max must be non-negative");
  if (!(broadcast_interval > 0.0)) {
    throw InvalidArgument("broadcast_interval must be positive");
  }
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
}

WeightConfig Scenario::weight_config() const {
  WeightConfig config;
  config.alphas = alphas;
  config.ns_threshold = ns_threshold;
  return config;
}

std::string_view to_string(MaintenanceKind kind) {
  switch (kind) {
    case MaintenanceKind::kBoundaryExit:
      return "BoundaryExit";
    case MaintenanceKind::kFindCH:
      return "FindCH";
    case MaintenanceKind::kAck:
      return "Ack";
    case MaintenanceKind::kJoin:
      return "Join";
    case MaintenanceKind::kBecomeMaster:
      return "BecomeMaster";
  }
  return "BoundaryExit";
}

std::vector<Position> step_positions(std::span<const Position> positions,
                                     double v_max, double dt,
                                     double terrain_size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Position> out(positions.begin(), positions.end());
  for (auto& p : out) {
    const double heading = 2.0 * std::numbers::pi * unit(rng);
    const double distance = v_max * unit(rng) * dt;
    p.x = reflect(p.x + distance * std::cos(heading), terrain_size);
    p.y = reflect(p.y + distance * std::sin(heading), terrain_size);
  }
  return out;
}

RefreshResult hello_refresh(std::span<const Position> positions, double range,
                            ClusterState& state, const WeightRanking& ranking,
                            double time) {
  RefreshResult result;
  result.graph = build_graph(positions, range);
  const NetworkGraph& graph = result.graph;

  for (auto& cluster : state.clusters) {
    if (!cluster.proxy || graph.adjacent(cluster.master, *cluster.proxy)) {
      continue;
    }
    const NodeId old_master = cluster.master;
    const NodeId promoted = *cluster.proxy;
    std::vector<NodeId> candidates;
    for (NodeId s : cluster.slaves()) {
      if (graph.adjacent(promoted, s)) candidates.push_back(s);
    }
    cluster.master = promoted;
    cluster.proxy = ranking.best(candidates);
    state.statuses[old_master] = NodeStatus::kSlave;
    state.statuses[promoted] = NodeStatus::kMaster;
    if (cluster.proxy) state.statuses[*cluster.proxy] = NodeStatus::kProxy;
    result.notes.push_back("cluster " + std::to_string(cluster.id) +
                           ": master " + std::to_string(old_master) +
                           " lost proxy " + std::to_string(promoted) +
                           ", proxy promoted");
  }

  for (const auto& cluster : state.clusters) {
    for (NodeId s : cluster.slaves()) {
      const bool near_master = graph.adjacent(s, cluster.master);
      const bool near_proxy = cluster.proxy && graph.adjacent(s, *cluster.proxy);
      if (!near_master && !near_proxy) {
        result.exits.push_back({time, MaintenanceKind::kBoundaryExit, s,
                                pair_of(cluster)});
      }
    }
  }
  std::sort(result.exits.begin(), result.exits.end(),
            [](const MaintenanceEvent& a, const MaintenanceEvent& b) {
              return a.node < b.node;
            });
  return result;
}

std::vector<MaintenanceEvent> find_ch(NodeId node, ClusterState& state,
                                      const NetworkGraph& graph,
                                      const WeightRanking& ranking,
                                      double time) {
  std::vector<MaintenanceEvent> events;
  events.push_back({time, MaintenanceKind::kFindCH, node, std::nullopt});

  if (const auto index = state.cluster_index(node)) {
    auto& cluster = state.clusters[*index];
    if (cluster.master == node || cluster.proxy == node) {
      throw InvalidArgument("find_ch is for slaves; node " +
                            std::to_string(node) + " leads its cluster");
    }
    std::erase(cluster.members, node);
  }

  std::vector<NodeId> acknowledgers;
  for (NodeId v : graph.neighbors(node)) {
    if (state.is_leader(v)) acknowledgers.push_back(v);
  }
  for (NodeId a : acknowledgers) {
    const auto& host = state.clusters[*state.cluster_index(a)];
    events.push_back({time, MaintenanceKind::kAck, node, pair_of(host)});
  }

  if (const auto chosen = ranking.best(acknowledgers)) {
    auto& host = state.clusters[*state.cluster_index(*chosen)];
    host.members.insert(
        std::upper_bound(host.members.begin(), host.members.end(), node), node);
    state.statuses[node] = NodeStatus::kSlave;
    events.push_back({time, MaintenanceKind::kJoin, node, pair_of(host)});
    return events;
  }

  ClusterRecord solo;
  solo.id = next_cluster_id(state);
  solo.master = node;
  solo.members = {node};
  solo.adjusted = true;
  state.clusters.push_back(solo);
  state.statuses[node] = NodeStatus::kMaster;
  events.push_back({time, MaintenanceKind::kBecomeMaster, node,
                    ElectedPair{node, std::nullopt}});
  return events;
}

bool SimulationResult::all_checks_passed() const {
  return std::all_of(summaries.begin(), summaries.end(),
                     [](const StepSummary& s) {
                       return s.partition_ok && s.dominance_ok;
                     });
}

SimulationResult run_simulation(const Scenario& scenario,
                                const SimulationOptions& options) {
  scenario.validate();
  const WeightConfig config = scenario.weight_config();
  std::mt19937_64 rng(scenario.seed);

  SimulationResult result;
  result.initial_positions =
      deploy_random(scenario.node_count, scenario.terrain_size, rng);
  NetworkGraph graph = build_graph(result.initial_positions, scenario.range);
  if (auto components = connected_components(graph); components.size() > 1) {
    throw DisconnectedGraphError(std::move(components));
  }
  std::vector<NodeMetrics> metrics =
      metrics_for(graph, result.initial_positions, config);
  result.initial =
      cluster_network(graph, hop_distance_table(graph), metrics);

  ClusterState state = result.initial.adjusted;
  state.events.clear();
  WeightRanking ranking(metrics);
  std::vector<Position> positions = result.initial_positions;
  long refreshes = 0;

  for (std::size_t step = 1; step <= scenario.steps; ++step) {
    positions = step_positions(positions, scenario.v_max, scenario.dt,
                               scenario.terrain_size, rng);
    StepSummary summary;
    summary.step = step;
    summary.time = static_cast<double>(step) * scenario.dt;
    const long due = static_cast<long>(
        std::floor(summary.time / scenario.broadcast_interval + 1e-9));
    if (due > refreshes) {
      refreshes = due;
      summary.refreshed = true;
      RefreshResult refresh =
          hello_refresh(positions, scenario.range, state, ranking, summary.time);
      graph = std::move(refresh.graph);
      summary.warnings = std::move(refresh.notes);
      if (options.recompute_weights) {
        if (is_connected(graph)) {
          metrics = metrics_for(graph, positions, config);
          ranking = WeightRanking(metrics);
        } else {
          summary.warnings.push_back(
              "topology disconnected; keeping previous weights");
        }
      }
      const HopMatrix hop = hop_distance_table(graph);
      std::vector<char> pending(graph.size(), 0);
      for (const auto& exit : refresh.exits) pending[exit.node] = 1;
      summary.exits = refresh.exits.size();
      for (const auto& exit : refresh.exits) {
        result.events.push_back(exit);
        auto resolved = find_ch(exit.node, state, graph, ranking, summary.time);
        result.events.insert(result.events.end(), resolved.begin(),
                             resolved.end());
        pending[exit.node] = 0;
        ++summary.resolutions;
        summary.partition_ok =
            summary.partition_ok && check_partition(state, graph).passed;
        summary.dominance_ok =
            summary.dominance_ok && dominance_holds(state, hop, pending);
      }
      if (refresh.exits.empty()) {
        summary.partition_ok = check_partition(state, graph).passed;
        summary.dominance_ok = dominance_holds(state, hop, pending);
      }
      const PropertyCheck independence = check_master_independence(state, graph);
      summary.masters_independent = independence.passed;
      if (!independence.passed) {
        summary.warnings.insert(summary.warnings.end(),
                                independence.notes.begin(),
                                independence.notes.end());
      }
    }
    result.summaries.push_back(std::move(summary));
  }

  if (options.force_recluster) {
    graph = build_graph(positions, scenario.range);
    if (is_connected(graph)) {
      metrics = metrics_for(graph, positions, config);
      state = cluster_network(graph, hop_distance_table(graph), metrics).adjusted;
    }
  }
  result.final_positions = std::move(positions);
  result.final_state = std::move(state);
  result.final_graph = std::move(graph);
  result.final_metrics = std::move(metrics);
  return result;
}

}  // namespace mdseca
