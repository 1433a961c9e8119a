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

#include "mdseca/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mdseca {

using nlohmann::ordered_json;

namespace {

const ordered_json& required(const ordered_json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) {
    throw FormatError(std::string("missing required field '") + key + "'");
  }
  return doc[key];
}

double number_field(const ordered_json& doc, const char* key) {
  const auto& value = required(doc, key);
  if (!value.is_number()) {
    throw FormatError(std::string("field '") + key + "' must be a number");
  }
  return value.get<double>();
}

template <typename T>
T integer_field(const ordered_json& doc, const char* key) {
  const auto& value = required(doc, key);
  if (!value.is_number_integer() || (value.is_number_integer() &&
                                     !value.is_number_unsigned() &&
                                     value.get<long long>() < 0)) {
    throw FormatError(std::string("field '") + key +
                      "' must be a non-negative integer");
  }
  return value.get<T>();
}

ordered_json parse_document(std::string_view text, const char* what) {
  try {
    auto doc = ordered_json::parse(text);
    if (!doc.is_object()) {
      throw FormatError(std::string(what) + " must be a JSON object");
    }
    return doc;
  } catch (const ordered_json::parse_error& e) {
    throw FormatError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

ordered_json optional_node(const std::optional<NodeId>& u) {
  return u ? ordered_json(*u) : ordered_json(nullptr);
}

ordered_json pair_json(const std::optional<ElectedPair>& pair) {
  if (!pair) return nullptr;
  return ordered_json::array({pair->master, optional_node(pair->proxy)});
}

ordered_json clusters_json(const ClusterState& state) {
  ordered_json clusters = ordered_json::array();
  for (const auto& c : state.clusters) {
    ordered_json entry;
    entry["id"] = c.id;
    entry["master"] = c.master;
    entry["proxy"] = optional_node(c.proxy);
    entry["members"] = c.members;
    entry["adjusted"] = c.adjusted;
    clusters.push_back(std::move(entry));
  }
  return clusters;
}

ordered_json state_json(const ClusterState& state,
                        std::optional<PerfectionClass> classification) {
  ordered_json doc;
  doc["clusters"] = clusters_json(state);
  ordered_json statuses = ordered_json::array();
  for (NodeStatus s : state.statuses) statuses.push_back(to_string(s));
  doc["statuses"] = std::move(statuses);
  doc["critical"] = state.critical;
  doc["hm1"] = state.hidden_masters_1;
  doc["hm2"] = state.hidden_masters_2;
  doc["deferred"] = state.deferred;
  doc["classification"] =
      classification ? ordered_json(to_string(*classification)) : nullptr;
  return doc;
}

ordered_json cluster_event_json(const ClusterEvent& e) {
  ordered_json entry;
  entry["phase"] = e.phase == Phase::kFormation ? "formation" : "adjustment";
  entry["action"] = e.action;
  entry["node"] = e.node;
  entry["partner"] = optional_node(e.partner);
  entry["nodes"] = e.nodes;
  return entry;
}

ordered_json maintenance_event_json(const MaintenanceEvent& e) {
  ordered_json entry;
  entry["time"] = e.time;
  entry["kind"] = to_string(e.kind);
  entry["node"] = e.node;
  entry["target"] = pair_json(e.target);
  return entry;
}

std::vector<NodeId> node_list(const ordered_json& doc, const char* key,
                              std::size_t n) {
  std::vector<NodeId> out;
  for (const auto& item : required(doc, key)) {
    if (!item.is_number_unsigned() || item.get<NodeId>() >= n) {
      throw FormatError(std::string("field '") + key +
                        "' holds an invalid node id");
    }
    out.push_back(item.get<NodeId>());
  }
  return out;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw FormatError("failed writing '" + path.string() + "'");
}

Scenario parse_scenario(std::string_view text) {
  const ordered_json doc = parse_document(text, "scenario");
  Scenario s;
  s.node_count = integer_field<std::size_t>(doc, "node_count");
  s.terrain_size = number_field(doc, "terrain_size");
  s.range = number_field(doc, "range");
  s.v_max = number_field(doc, "v_max");
  s.broadcast_interval = number_field(doc, "broadcast_interval");
  s.dt = number_field(doc, "dt");
  s.steps = integer_field<std::size_t>(doc, "steps");
  s.seed = integer_field<std::uint64_t>(doc, "seed");
  if (doc.contains("ns_threshold")) {
    s.ns_threshold = number_field(doc, "ns_threshold");
  }
  if (doc.contains("alphas")) {
    const auto& alphas = doc["alphas"];
    if (!alphas.is_array() || alphas.size() != 6) {
      throw FormatError("field 'alphas' must be an array of 6 numbers");
    }
    for (std::size_t i = 0; i < 6; ++i) {
      if (!alphas[i].is_number()) {
        throw FormatError("field 'alphas' must hold numbers");
      }
      s.alphas[i] = alphas[i].get<double>();
    }
  }
  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path));
}

std::string cluster_report_json(const ClusterState& state,
                                std::optional<PerfectionClass> classification,
                                const ClusterState* formation) {
  ordered_json doc = state_json(state, classification);
  ordered_json events = ordered_json::array();
  for (const auto& e : state.events) events.push_back(cluster_event_json(e));
  doc["events"] = std::move(events);
  if (formation != nullptr) {
    ordered_json snapshot;
    snapshot["clusters"] = clusters_json(*formation);
    snapshot["critical"] = formation->critical;
    doc["formation"] = std::move(snapshot);
  }
  return dump(doc);
}

ClusterState parse_cluster_report(std::string_view text) {
  const ordered_json doc = parse_document(text, "cluster report");
  ClusterState state;
  for (const auto& s : required(doc, "statuses")) {
    if (!s.is_string()) throw FormatError("statuses must be strings");
    try {
      state.statuses.push_back(parse_node_status(s.get<std::string>()));
    } catch (const InvalidArgument& e) {
      throw FormatError(e.what());
    }
  }
  const std::size_t n = state.statuses.size();
  for (const auto& entry : required(doc, "clusters")) {
    ClusterRecord c;
    c.id = integer_field<std::size_t>(entry, "id");
    c.master = integer_field<NodeId>(entry, "master");
    if (entry.contains("proxy") && !entry["proxy"].is_null()) {
      c.proxy = integer_field<NodeId>(entry, "proxy");
    }
    c.members = node_list(entry, "members", n);
    std::sort(c.members.begin(), c.members.end());
    c.adjusted = entry.value("adjusted", false);
    if (c.master >= n || (c.proxy && *c.proxy >= n)) {
      throw FormatError("cluster " + std::to_string(c.id) +
                        " names a leader outside the node range");
    }
    state.clusters.push_back(std::move(c));
  }
  state.critical = node_list(doc, "critical", n);
  state.hidden_masters_1 = node_list(doc, "hm1", n);
  state.hidden_masters_2 = node_list(doc, "hm2", n);
  state.deferred = node_list(doc, "deferred", n);
  return state;
}

std::string metrics_json(std::span<const NodeMetrics> metrics) {
  ordered_json doc = ordered_json::array();
  for (const auto& m : metrics) {
    ordered_json entry;
    entry["deg"] = m.degree;
    entry["g_h"] = m.g_h;
    entry["g_ed"] = m.g_ed;
    entry["cci"] = m.cci;
    entry["ecc"] = m.ecc;
    entry["mhd"] = m.mhd;
    entry["med"] = m.med;
    entry["m1"] = m.categories ? ordered_json(m.categories->strong) : nullptr;
    entry["m2"] = m.categories ? ordered_json(m.categories->medium) : nullptr;
    entry["m3"] = m.categories ? ordered_json(m.categories->weak) : nullptr;
    entry["ns"] = m.ns;
    entry["w"] = m.weight;
    doc.push_back(std::move(entry));
  }
  return dump(doc);
}

std::string cluster_dot(const ClusterState& state, const NetworkGraph& graph) {
  std::ostringstream out;
  out << "graph mdseca {\n  node [fontname=\"Helvetica\"];\n";
  std::vector<char> placed(graph.size(), 0);
  auto node_line = [&](NodeId u) {
    out << "    n" << u << " [label=\"" << u << "\"";
    switch (state.statuses.at(u)) {
      case NodeStatus::kMaster:
        out << ", shape=doublecircle, style=\"striped\", fillcolor=\"black:white\"";
        break;
      case NodeStatus::kProxy:
        out << ", shape=circle, style=filled, fillcolor=gray";
        break;
      default:
        out << ", shape=circle";
        break;
    }
    out << ", role=\"" << to_string(state.statuses.at(u)) << "\"];\n";
    placed[u] = 1;
  };
  for (const auto& c : state.clusters) {
    out << "  subgraph cluster_" << c.id << " {\n    label=\"C" << c.id
        << "\";\n";
    for (NodeId u : c.members) node_line(u);
    out << "  }\n";
  }
  for (NodeId u = 0; u < graph.size(); ++u) {
    if (placed[u]) continue;
    out << "  n" << u << " [label=\"" << u << "\", shape=box, role=\""
        << to_string(state.statuses.at(u)) << "\"];\n";
  }
  for (const Edge& e : graph.edges()) {
    out << "  n" << e.u << " -- n" << e.v;
    bool leader_edge = false;
    for (const auto& c : state.clusters) {
      if (c.proxy && e == Edge(c.master, *c.proxy)) leader_edge = true;
    }
    if (leader_edge) out << " [penwidth=3]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string events_ndjson(std::span<const MaintenanceEvent> events) {
  std::string out;
  for (const auto& e : events) out += maintenance_event_json(e).dump() + "\n";
  return out;
}

std::string property_report_json(const PropertyReport& report) {
  ordered_json doc;
  doc["passed"] = report.all_passed();
  doc["radius"] = report.radius ? ordered_json(*report.radius) : nullptr;
  doc["diameter"] = report.diameter ? ordered_json(*report.diameter) : nullptr;
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json entry;
    entry["name"] = c.name;
    entry["passed"] = c.passed;
    entry["cluster"] = c.cluster_id ? ordered_json(*c.cluster_id) : nullptr;
    entry["witness_nodes"] = c.witness_nodes;
    ordered_json edges = ordered_json::array();
    for (const Edge& e : c.witness_edges) {
      edges.push_back(ordered_json::array({e.u, e.v}));
    }
    entry["witness_edges"] = std::move(edges);
    entry["notes"] = c.notes;
    checks.push_back(std::move(entry));
  }
  doc["checks"] = std::move(checks);
  return dump(doc);
}

std::string simulation_report_json(const SimulationResult& result) {
  ordered_json doc = state_json(result.final_state, std::nullopt);
  ordered_json events = ordered_json::array();
  for (const auto& e : result.events) events.push_back(maintenance_event_json(e));
  doc["events"] = std::move(events);
  ordered_json steps = ordered_json::array();
  for (const auto& s : result.summaries) {
    if (!s.refreshed) continue;
    ordered_json entry;
    entry["step"] = s.step;
    entry["time"] = s.time;
    entry["exits"] = s.exits;
    entry["partition"] = s.partition_ok;
    entry["dominance"] = s.dominance_ok;
    entry["masters_independent"] = s.masters_independent;
    entry["warnings"] = s.warnings;
    steps.push_back(std::move(entry));
  }
  doc["refreshes"] = std::move(steps);
  return dump(doc);
}

}  // namespace mdseca
