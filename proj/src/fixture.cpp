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

#include "mdseca/fixture.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mdseca {

using nlohmann::ordered_json;

namespace {

template <typename T>
std::optional<std::vector<T>> optional_array(const ordered_json& doc,
                                             const char* key, std::size_t n) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  const auto& value = doc[key];
  if (!value.is_array() || value.size() != n) {
    throw FormatError(std::string("field '") + key + "' must be an array of " +
                      std::to_string(n) + " numbers");
  }
  std::vector<T> out;
  out.reserve(n);
  for (const auto& item : value) {
    if (!item.is_number()) {
      throw FormatError(std::string("field '") + key + "' must hold numbers");
    }
    if constexpr (std::is_integral_v<T>) {
      const double d = item.get<double>();
      if (d != std::floor(d)) {
        throw FormatError(std::string("field '") + key + "' must hold integers");
      }
      out.push_back(static_cast<T>(d));
    } else {
      out.push_back(item.get<T>());
    }
  }
  return out;
}

const ordered_json& required(const ordered_json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw FormatError(std::string("missing required field '") + key + "'");
  }
  return doc[key];
}

}  // namespace

Fixture ingest_fixture(std::span<const Edge> edges, EuclidMatrix euclid,
                       MetricOverrides overrides, WeightConfig config,
                       std::optional<double> range) {
  const std::size_t n = euclid.size();
  if (n == 0) throw FormatError("fixture has no nodes");
  for (NodeId u = 0; u < n; ++u) {
    if (euclid(u, u) != 0.0) {
      throw FormatError("euclid diagonal entry " + std::to_string(u) +
                        " is not zero");
    }
    for (NodeId v = u + 1; v < n; ++v) {
      if (euclid(u, v) != euclid(v, u)) {
        throw FormatError("euclid matrix is asymmetric at (" +
                          std::to_string(u) + ", " + std::to_string(v) + ")");
      }
      if (euclid(u, v) < 0.0) {
        throw FormatError("negative euclid distance at (" + std::to_string(u) +
                          ", " + std::to_string(v) + ")");
      }
    }
  }
  NetworkGraph graph(n, range);
  for (const Edge& e : edges) {
    try {
      graph.add_edge(e.u, e.v);
    } catch (const InvalidArgument& err) {
      throw FormatError(err.what());
    }
  }
  Fixture fixture;
  fixture.tables.hop = hop_distance_table(graph);
  fixture.tables.euclid = std::move(euclid);
  fixture.graph = std::move(graph);
  fixture.overrides = std::move(overrides);
  fixture.config = config;
  return fixture;
}

Fixture parse_fixture(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& err) {
    throw FormatError(std::string("fixture is not valid JSON: ") + err.what());
  }
  if (!doc.is_object()) throw FormatError("fixture must be a JSON object");

  const auto& nodes = required(doc, "nodes");
  if (!nodes.is_number_integer() || nodes.get<long>() <= 0) {
    throw FormatError("field 'nodes' must be a positive integer");
  }
  const auto n = nodes.get<std::size_t>();

  const auto& edge_list = required(doc, "edges");
  if (!edge_list.is_array()) throw FormatError("field 'edges' must be an array");
  std::vector<Edge> edges;
  for (const auto& pair : edge_list) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer() || pair[0].get<long>() < 0 ||
        pair[1].get<long>() < 0) {
      throw FormatError("each edge must be a [u, v] pair of node ids");
    }
    const auto u = pair[0].get<std::size_t>();
    const auto v = pair[1].get<std::size_t>();
    if (u >= n || v >= n) {
      throw FormatError("edge [" + std::to_string(u) + ", " +
                        std::to_string(v) + "] references a missing node");
    }
    if (u == v) throw FormatError("self-loop on node " + std::to_string(u));
    edges.emplace_back(u, v);
  }

  const auto& rows = required(doc, "euclid");
  if (!rows.is_array() || rows.size() != n) {
    throw FormatError("field 'euclid' must be a " + std::to_string(n) + "x" +
                      std::to_string(n) + " matrix");
  }
  EuclidMatrix euclid(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) {
      throw FormatError("euclid row " + std::to_string(r) + " must have " +
                        std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (!rows[r][c].is_number()) {
        throw FormatError("euclid entries must be numbers");
      }
      euclid(r, c) = rows[r][c].get<double>();
    }
  }

  MetricOverrides overrides;
  overrides.ns = optional_array<double>(doc, "ns_override", n);
  overrides.weight = optional_array<double>(doc, "weight_override", n);
  overrides.g_h = optional_array<int>(doc, "g_h_override", n);
  overrides.g_ed = optional_array<int>(doc, "g_ed_override", n);

  WeightConfig config;
  if (doc.contains("ns_threshold")) {
    if (!doc["ns_threshold"].is_number()) {
      throw FormatError("field 'ns_threshold' must be a number");
    }
    config.ns_threshold = doc["ns_threshold"].get<double>();
  }
  if (auto alphas = optional_array<double>(doc, "alphas", 6)) {
    std::copy(alphas->begin(), alphas->end(), config.alphas.begin());
  }
  if (doc.contains("distance_mean_divisor")) {
    const auto& d = doc["distance_mean_divisor"];
    if (d == "n") {
      config.mean_divisor = MeanDivisor::kAll;
    } else if (d == "n_minus_1") {
      config.mean_divisor = MeanDivisor::kOthers;
    } else {
      throw FormatError(
          "field 'distance_mean_divisor' must be \"n\" or \"n_minus_1\"");
    }
  }
  std::optional<double> range;
  if (doc.contains("range")) {
    if (!doc["range"].is_number() || !(doc["range"].get<double>() > 0.0)) {
      throw FormatError("field 'range' must be a positive number");
    }
    range = doc["range"].get<double>();
  }
  return ingest_fixture(edges, std::move(euclid), std::move(overrides), config,
                        range);
}

Fixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read fixture '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_fixture(buffer.str());
}

std::string fixture_to_json(const Fixture& fixture) {
  const std::size_t n = fixture.graph.size();
  ordered_json doc;
  doc["nodes"] = n;
  doc["edges"] = ordered_json::array();
  for (const Edge& e : fixture.graph.edges()) {
    doc["edges"].push_back({e.u, e.v});
  }
  doc["euclid"] = ordered_json::array();
  for (std::size_t r = 0; r < n; ++r) {
    auto row = fixture.tables.euclid.row(r);
    doc["euclid"].push_back(std::vector<double>(row.begin(), row.end()));
  }
  const auto& o = fixture.overrides;
  if (o.ns) doc["ns_override"] = *o.ns;
  if (o.weight) doc["weight_override"] = *o.weight;
  if (o.g_h) doc["g_h_override"] = *o.g_h;
  if (o.g_ed) doc["g_ed_override"] = *o.g_ed;
  doc["ns_threshold"] = fixture.config.ns_threshold;
  doc["alphas"] = fixture.config.alphas;
  doc["distance_mean_divisor"] =
      fixture.config.mean_divisor == MeanDivisor::kAll ? "n" : "n_minus_1";
  if (fixture.graph.range()) doc["range"] = *fixture.graph.range();
  return doc.dump(2) + "\n";
}

}  // namespace mdseca
