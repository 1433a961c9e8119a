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

#ifndef MDSECA_REPORT_HPP_
#define MDSECA_REPORT_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mdseca/cluster.hpp"
#include "mdseca/graph.hpp"
#include "mdseca/metrics.hpp"
#include "mdseca/mobility.hpp"
#include "mdseca/verify.hpp"

namespace mdseca {

// Throws FormatError when the file cannot be read or written.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Required: node_count, terrain_size, range, v_max, broadcast_interval, dt,
// steps, seed. Optional: ns_threshold (100), alphas (six times 1/6).
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// Keys in fixed order: clusters, statuses, critical, hm1, hm2, deferred,
// classification, events. With `formation`, a trailing object records the
// formation clusters and critical set as well.
std::string cluster_report_json(const ClusterState& state,
                                std::optional<PerfectionClass> classification,
                                const ClusterState* formation = nullptr);

// Reads back the clusters, statuses and node sets of a cluster report.
// Events are not restored.
ClusterState parse_cluster_report(std::string_view text);

std::string metrics_json(std::span<const NodeMetrics> metrics);

// Clusters become subgraphs; masters, proxies and slaves get distinct shapes.
std::string cluster_dot(const ClusterState& state, const NetworkGraph& graph);

// One JSON object per line: {time, kind, node, target}.
std::string events_ndjson(std::span<const MaintenanceEvent> events);

std::string property_report_json(const PropertyReport& report);

// Final state in cluster report layout with the maintenance events, followed
// by the per-step summaries.
std::string simulation_report_json(const SimulationResult& result);

}  // namespace mdseca

#endif  // MDSECA_REPORT_HPP_
