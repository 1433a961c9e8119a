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

#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "mdseca/cluster.hpp"
#include "mdseca/error.hpp"
#include "mdseca/fixture.hpp"
#include "mdseca/report.hpp"

namespace mdseca {
namespace {

const std::filesystem::path kData = MDSECA_DATA_DIR;
const std::filesystem::path kTestData = MDSECA_TEST_DATA_DIR;

struct Bundled {
  Fixture fixture;
  std::vector<NodeMetrics> metrics;
  ClusteringResult result;
};

Bundled bundled() {
  Bundled b{load_fixture(kData / "paper23.json"), {}, {}};
  b.metrics = compute_metrics(b.fixture.graph, b.fixture.tables,
                              b.fixture.config, b.fixture.overrides);
  b.result = cluster_network(b.fixture.graph, b.fixture.tables.hop, b.metrics);
  return b;
}

constexpr const char* kScenario = R"({
  "node_count": 12, "terrain_size": 50, "range": 25, "v_max": 2,
  "broadcast_interval": 1, "dt": 0.5, "steps": 10, "seed": 4
})";

TEST(ClusterReportTest, BundledFixtureMatchesGolden) {
  const Bundled b = bundled();
  EXPECT_EQ(cluster_report_json(b.result.adjusted, b.result.classification,
                                &b.result.formed),
            read_text_file(kTestData / "paper23_report.json"));
}

TEST(ClusterReportTest, KeysAppearInFixedOrder) {
  const Bundled b = bundled();
  const auto doc = nlohmann::ordered_json::parse(
      cluster_report_json(b.result.adjusted, b.result.classification));
  std::vector<std::string> keys;
  for (const auto& item : doc.items()) keys.push_back(item.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"clusters", "statuses", "critical",
                                            "hm1", "hm2", "deferred",
                                            "classification", "events"}));
  EXPECT_EQ(doc["classification"], "fairly_perfect");
  EXPECT_EQ(doc["statuses"][20], "master");
  EXPECT_EQ(doc["events"][0]["action"], "elect_master");
}

TEST(ClusterReportTest, ParseRestoresClustersAndStatuses) {
  const Bundled b = bundled();
  const ClusterState parsed = parse_cluster_report(
      cluster_report_json(b.result.adjusted, b.result.classification));
  ASSERT_EQ(parsed.clusters.size(), b.result.adjusted.clusters.size());
  for (std::size_t i = 0; i < parsed.clusters.size(); ++i) {
    const auto& x = parsed.clusters[i];
    const auto& y = b.result.adjusted.clusters[i];
    EXPECT_EQ(x.id, y.id);
    EXPECT_EQ(x.master, y.master);
    EXPECT_EQ(x.proxy, y.proxy);
    EXPECT_EQ(x.members, y.members);
    EXPECT_EQ(x.adjusted, y.adjusted);
  }
  EXPECT_EQ(parsed.statuses, b.result.adjusted.statuses);
  EXPECT_EQ(parsed.hidden_masters_1, b.result.adjusted.hidden_masters_1);
  EXPECT_EQ(parsed.deferred, b.result.adjusted.deferred);
}

TEST(ClusterReportTest, ParseRejectsBadDocuments) {
  EXPECT_THROW(parse_cluster_report("[]"), FormatError);
  EXPECT_THROW(parse_cluster_report("{"), FormatError);
  EXPECT_THROW(parse_cluster_report(R"({"statuses": ["boss"]})"), FormatError);
  EXPECT_THROW(parse_cluster_report(
                   R"({"statuses": ["master"], "clusters": [{"id": 1,
                   "master": 4, "proxy": null, "members": [0]}],
                   "critical": [], "hm1": [], "hm2": [], "deferred": []})"),
               FormatError);
}

TEST(MetricsJsonTest, FixedFieldNames) {
  const Bundled b = bundled();
  const auto doc = nlohmann::ordered_json::parse(metrics_json(b.metrics));
  ASSERT_EQ(doc.size(), 23u);
  std::vector<std::string> keys;
  for (const auto& item : doc[3].items()) keys.push_back(item.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"deg", "g_h", "g_ed", "cci", "ecc",
                                            "mhd", "med", "m1", "m2", "m3",
                                            "ns", "w"}));
  EXPECT_EQ(doc[3]["deg"], 5);
  EXPECT_EQ(doc[3]["ns"], 400.0);
  EXPECT_TRUE(doc[3]["m1"].is_null());
}

TEST(MetricsJsonTest, CategoriesPresentInPositionMode) {
  const std::vector<Position> pos{{0, 0}, {4, 0}, {9, 0}};
  const NetworkGraph g = build_graph(pos, 10.0);
  const auto metrics =
      compute_metrics(g, distance_tables(g, pos), WeightConfig{});
  const auto doc = nlohmann::json::parse(metrics_json(metrics));
  EXPECT_EQ(doc[0]["m1"], 1);
  EXPECT_EQ(doc[0]["m3"], 1);
}

TEST(ScenarioParseTest, ReadsAllFields) {
  const Scenario s = parse_scenario(kScenario);
  EXPECT_EQ(s.node_count, 12u);
  EXPECT_DOUBLE_EQ(s.terrain_size, 50.0);
  EXPECT_DOUBLE_EQ(s.range, 25.0);
  EXPECT_DOUBLE_EQ(s.dt, 0.5);
  EXPECT_EQ(s.steps, 10u);
  EXPECT_EQ(s.seed, 4u);
  EXPECT_DOUBLE_EQ(s.ns_threshold, 100.0);
  EXPECT_DOUBLE_EQ(s.alphas[5], 1.0 / 6);
}

TEST(ScenarioParseTest, MissingRangeIsNamed) {
  auto doc = nlohmann::json::parse(kScenario);
  doc.erase("range");
  try {
    parse_scenario(doc.dump());
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("'range'"), std::string::npos);
  }
}

TEST(ScenarioParseTest, RejectsInvalidValues) {
  auto doc = nlohmann::json::parse(kScenario);
  doc["alphas"] = {1, 2, 3};
  EXPECT_THROW(parse_scenario(doc.dump()), FormatError);
  doc = nlohmann::json::parse(kScenario);
  doc["node_count"] = -3;
  EXPECT_THROW(parse_scenario(doc.dump()), FormatError);
  doc = nlohmann::json::parse(kScenario);
  doc["broadcast_interval"] = 0;
  EXPECT_THROW(parse_scenario(doc.dump()), FormatError);
  doc = nlohmann::json::parse(kScenario);
  doc["range"] = "far";
  EXPECT_THROW(parse_scenario(doc.dump()), FormatError);
}

TEST(EventsTest, OneRecordPerLine) {
  const std::vector<MaintenanceEvent> events{
      {2.0, MaintenanceKind::kBoundaryExit, 4, ElectedPair{0, 1}},
      {2.0, MaintenanceKind::kFindCH, 4, std::nullopt},
      {2.0, MaintenanceKind::kBecomeMaster, 4, ElectedPair{4, std::nullopt}}};
  EXPECT_EQ(events_ndjson(events),
            "{\"time\":2.0,\"kind\":\"BoundaryExit\",\"node\":4,\"target\":[0,1]}\n"
            "{\"time\":2.0,\"kind\":\"FindCH\",\"node\":4,\"target\":null}\n"
            "{\"time\":2.0,\"kind\":\"BecomeMaster\",\"node\":4,\"target\":[4,null]}\n");
  EXPECT_EQ(events_ndjson({}), "");
}

TEST(SimulationReportTest, StaticRunHasEmptyEventList) {
  Scenario s = parse_scenario(kScenario);
  s.v_max = 0.0;
  const auto doc = nlohmann::json::parse(simulation_report_json(run_simulation(s)));
  EXPECT_TRUE(doc["events"].is_array());
  EXPECT_TRUE(doc["events"].empty());
  EXPECT_EQ(doc["refreshes"].size(), 5u);
}

TEST(PropertyReportTest, CarriesChecksAndGraphShape) {
  const Bundled b = bundled();
  const auto report = verify_state(b.result.adjusted, b.fixture.graph,
                                   b.fixture.tables.hop);
  const auto doc = nlohmann::json::parse(property_report_json(report));
  EXPECT_EQ(doc["passed"], true);
  EXPECT_EQ(doc["diameter"], 7);
  EXPECT_EQ(doc["checks"].size(), report.checks.size());
  EXPECT_EQ(doc["checks"][0]["name"], "cluster_diameter");
}

TEST(DotTest, ClustersBecomeSubgraphsWithRoleShapes) {
  const Bundled b = bundled();
  const std::string dot = cluster_dot(b.result.adjusted, b.fixture.graph);
  EXPECT_EQ(dot.rfind("graph mdseca {", 0), 0u);
  for (int id = 1; id <= 6; ++id) {
    EXPECT_NE(dot.find("subgraph cluster_" + std::to_string(id) + " {"),
              std::string::npos);
  }
  EXPECT_NE(dot.find("n3 [label=\"3\", shape=doublecircle"), std::string::npos);
  EXPECT_NE(dot.find("n1 [label=\"1\", shape=circle, style=filled"),
            std::string::npos);
  EXPECT_NE(dot.find("n1 -- n3 [penwidth=3]"), std::string::npos);
}

TEST(FileIoTest, UnreadableAndUnwritablePaths) {
  EXPECT_THROW(read_text_file("/nonexistent/in.json"), FormatError);
  EXPECT_THROW(write_text_file("/nonexistent/dir/out.json", "x"), FormatError);
}

}  // namespace
}  // namespace mdseca
