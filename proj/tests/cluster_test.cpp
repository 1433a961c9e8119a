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

#include <algorithm>
#include <random>
#include <set>

#include "mdseca/cluster.hpp"
#include "mdseca/error.hpp"
#include "mdseca/fixture.hpp"
#include "mdseca/verify.hpp"
#include "oracles.hpp"

namespace mdseca {
namespace {

struct FixtureRun {
  Fixture fixture;
  std::vector<NodeMetrics> metrics;
};

FixtureRun bundled() {
  FixtureRun run{load_fixture(std::filesystem::path(MDSECA_DATA_DIR) /
                              "paper23.json"),
                 {}};
  run.metrics = compute_metrics(run.fixture.graph, run.fixture.tables,
                                run.fixture.config, run.fixture.overrides);
  return run;
}

std::vector<NodeId> sorted(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

struct Instance {
  oracle::GeometricInstance geo;
  DistanceTables tables;
  std::vector<NodeMetrics> metrics;
};

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(5, 35);
  const std::size_t n = size(rng);
  Instance inst;
  inst.geo = oracle::connected_geometric(
      n, 100.0, 100.0 * std::sqrt(2.0 / static_cast<double>(n)) + 10.0, rng);
  inst.tables = distance_tables(inst.geo.graph, inst.geo.positions);
  inst.metrics = compute_metrics(inst.geo.graph, inst.tables, WeightConfig{});
  return inst;
}

NetworkGraph star_graph() {
  NetworkGraph g(5);
  for (NodeId leaf = 1; leaf < 5; ++leaf) g.add_edge(0, leaf);
  return g;
}

TEST(FormationTest, BundledFixtureClusters) {
  const auto run = bundled();
  const ClusterState s =
      run_m_dsec(run.fixture.graph, run.fixture.tables.hop, run.metrics);
  ASSERT_EQ(s.clusters.size(), 3u);
  EXPECT_EQ(s.clusters[0].master, 3u);
  EXPECT_EQ(s.clusters[0].proxy, std::optional<NodeId>(1));
  EXPECT_EQ(s.clusters[0].slaves(), (std::vector<NodeId>{0, 2, 4, 5, 22}));
  EXPECT_EQ(s.clusters[1].master, 18u);
  EXPECT_EQ(s.clusters[1].proxy, std::optional<NodeId>(16));
  EXPECT_EQ(s.clusters[1].slaves(),
            (std::vector<NodeId>{13, 14, 15, 17, 19, 21}));
  EXPECT_EQ(s.clusters[2].master, 9u);
  EXPECT_EQ(s.clusters[2].proxy, std::optional<NodeId>(10));
  EXPECT_EQ(s.clusters[2].slaves(), (std::vector<NodeId>{8, 11, 12}));
  EXPECT_EQ(s.hidden_masters_1, (std::vector<NodeId>{11, 13, 14}));
  EXPECT_EQ(s.critical, (std::vector<NodeId>{6, 7, 11, 13, 14, 20}));
  EXPECT_EQ(s.deferred, (std::vector<NodeId>{6, 7, 11, 13, 20}));
  EXPECT_EQ(s.hidden_masters_2, (std::vector<NodeId>{11, 13}));
  EXPECT_EQ(s.statuses[13], NodeStatus::kHiddenMasterI);
  EXPECT_EQ(s.statuses[20], NodeStatus::kUnclustered);
}

TEST(FormationTest, SingleNode) {
  const NetworkGraph g(1);
  const std::vector<NodeMetrics> metrics(1);
  const ClusterState s = run_m_dsec(g, hop_distance_table(g), metrics);
  ASSERT_EQ(s.clusters.size(), 1u);
  EXPECT_EQ(s.clusters[0].master, 0u);
  EXPECT_FALSE(s.clusters[0].proxy.has_value());
  EXPECT_TRUE(s.critical.empty());
}

TEST(FormationTest, StarIsOneCluster) {
  const std::vector<Position> pos{{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const NetworkGraph g = build_graph(pos, 1.0);
  ASSERT_EQ(g.edges(), star_graph().edges());
  const auto tables = distance_tables(g, pos);
  const auto metrics = compute_metrics(g, tables, WeightConfig{});
  const ClusteringResult r = cluster_network(g, tables.hop, metrics);
  ASSERT_EQ(r.formed.clusters.size(), 1u);
  EXPECT_EQ(r.formed.clusters[0].master, 0u);
  EXPECT_TRUE(r.formed.clusters[0].proxy.has_value());
  EXPECT_EQ(r.formed.clusters[0].members.size(), 5u);
  EXPECT_TRUE(r.formed.critical.empty());
  EXPECT_EQ(r.classification, PerfectionClass::kPerfect);
}

TEST(FormationTest, DisconnectedGraphIsRefused) {
  NetworkGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  const std::vector<NodeMetrics> metrics(4);
  try {
    run_m_dsec(g, hop_distance_table(g), metrics);
    FAIL() << "expected DisconnectedGraphError";
  } catch (const DisconnectedGraphError& e) {
    EXPECT_EQ(e.components().size(), 2u);
  }
}

TEST(MasterEligibilityTest, BundledFixtureCandidates) {
  const auto run = bundled();
  const auto& hop = run.fixture.tables.hop;
  const std::vector<ElectedPair> first{{3, 1}};
  EXPECT_TRUE(master_eligibility(18, first, hop));
  EXPECT_FALSE(master_eligibility(13, first, hop));
  EXPECT_FALSE(master_eligibility(2, first, hop));
}

TEST(MasterEligibilityTest, MatchesDefinitionOnRandomGraphs) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const NetworkGraph g = oracle::connected_random_graph(12, 0.2, rng);
    const HopMatrix hop = hop_distance_table(g);
    const std::vector<ElectedPair> pairs{{0, 1}, {5, std::nullopt}};
    for (NodeId z = 0; z < 12; ++z) {
      const auto d = [&](NodeId a) { return hop.checked(z, a); };
      const bool far_from_all = d(0) >= 3 && d(1) >= 3 && d(5) >= 3;
      const bool exactly_three = d(0) == 3 || d(1) == 3 || d(5) == 3;
      EXPECT_EQ(master_eligibility(z, pairs, hop), far_from_all && exactly_three)
          << "node " << z;
    }
  }
}

TEST(ElectProxyTest, BundledFixtureProxies) {
  const auto run = bundled();
  const auto& f = run.fixture;
  const WeightRanking ranking(run.metrics);
  EXPECT_EQ(elect_proxy(3, {}, f.graph, ranking, f.tables.hop),
            std::optional<NodeId>(1));
  const std::vector<ElectedPair> prior{{3, 1}, {18, 16}};
  EXPECT_EQ(elect_proxy(9, prior, f.graph, ranking, f.tables.hop),
            std::optional<NodeId>(10));
}

TEST(ElectProxyTest, IsolatedMasterHasNoProxy) {
  const NetworkGraph g(2);
  const std::vector<NodeMetrics> metrics(2);
  EXPECT_FALSE(elect_proxy(0, {}, g, WeightRanking(metrics),
                           hop_distance_table(g))
                   .has_value());
}

TEST(NeighborPartitionTest, BundledFixtureSets) {
  const auto run = bundled();
  const auto& f = run.fixture;
  const ClusterState s = run_m_dsec(f.graph, f.tables.hop, run.metrics);
  const WeightRanking ranking(run.metrics);
  EXPECT_EQ(sorted(neighbor_partitions(16, s, f.graph, ranking).n_prime),
            (std::vector<NodeId>{13, 14}));
  // 13 outweighs 11 (67.56 against 61.88), so it is not in N''(11).
  EXPECT_EQ(sorted(neighbor_partitions(11, s, f.graph, ranking).n_dprime),
            (std::vector<NodeId>{12, 14}));
}

TEST(NeighborPartitionTest, LeadersAreExcludedFromLighterSet) {
  NetworkGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  std::vector<NodeMetrics> metrics(3);
  metrics[0].weight = 10.0;
  ClusterState s;
  s.statuses = {NodeStatus::kSlave, NodeStatus::kMaster, NodeStatus::kProxy};
  const auto parts = neighbor_partitions(0, s, g, WeightRanking(metrics));
  EXPECT_TRUE(parts.n_dprime.empty());
  EXPECT_TRUE(parts.n_prime.empty());
  EXPECT_EQ(sorted(parts.n_m), (std::vector<NodeId>{2}));
}

TEST(AdjustmentTest, BundledFixtureRegroupsCriticalNodes) {
  const auto run = bundled();
  const auto& f = run.fixture;
  const ClusterState formed = run_m_dsec(f.graph, f.tables.hop, run.metrics);
  const ClusterState s = run_adjusted(formed, f.graph, run.metrics);
  ASSERT_EQ(s.clusters.size(), 6u);
  EXPECT_EQ(s.clusters[1].members, (std::vector<NodeId>{16, 17, 18, 19, 21}));
  EXPECT_EQ(s.clusters[2].members, (std::vector<NodeId>{8, 9, 10}));
  EXPECT_EQ(s.clusters[3].master, 13u);
  EXPECT_EQ(s.clusters[3].proxy, std::optional<NodeId>(11));
  EXPECT_EQ(s.clusters[3].members, (std::vector<NodeId>{11, 12, 13, 14, 15}));
  EXPECT_TRUE(s.clusters[3].adjusted);
  EXPECT_EQ(s.clusters[4].master, 6u);
  EXPECT_EQ(s.clusters[4].proxy, std::optional<NodeId>(7));
  EXPECT_EQ(s.clusters[5].members, (std::vector<NodeId>{20}));
  EXPECT_FALSE(s.clusters[5].proxy.has_value());
  EXPECT_TRUE(s.critical.empty());
  EXPECT_EQ(classify(formed, s), PerfectionClass::kFairlyPerfect);
}

TEST(AdjustmentTest, NothingCriticalMeansNoChange) {
  const NetworkGraph g = star_graph();
  std::vector<NodeMetrics> metrics(5);
  metrics[0].weight = 9.0;
  const ClusterState formed = run_m_dsec(g, hop_distance_table(g), metrics);
  ASSERT_TRUE(formed.critical.empty());
  const ClusterState adjusted = run_adjusted(formed, g, metrics);
  EXPECT_EQ(adjusted.clusters.size(), formed.clusters.size());
  EXPECT_EQ(adjusted.clusters[0].members, formed.clusters[0].members);
  EXPECT_EQ(adjusted.events.size(), formed.events.size());
  EXPECT_EQ(classify(formed, adjusted), PerfectionClass::kPerfect);
}

TEST(StatusNameTest, RoundTrips) {
  for (NodeStatus s :
       {NodeStatus::kMaster, NodeStatus::kProxy, NodeStatus::kSlave,
        NodeStatus::kHiddenMasterI, NodeStatus::kHiddenMasterII,
        NodeStatus::kUnclustered}) {
    EXPECT_EQ(parse_node_status(to_string(s)), s);
  }
  EXPECT_THROW(parse_node_status("chief"), FormatError);
}

class ClusteringPropertyTest : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20261016};
};

TEST_F(ClusteringPropertyTest, RerunsAreIdentical) {
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_instance(rng);
    const auto a = cluster_network(inst.geo.graph, inst.tables.hop, inst.metrics);
    const auto b = cluster_network(inst.geo.graph, inst.tables.hop, inst.metrics);
    ASSERT_EQ(a.adjusted.clusters.size(), b.adjusted.clusters.size());
    for (std::size_t i = 0; i < a.adjusted.clusters.size(); ++i) {
      EXPECT_EQ(a.adjusted.clusters[i].members, b.adjusted.clusters[i].members);
      EXPECT_EQ(a.adjusted.clusters[i].master, b.adjusted.clusters[i].master);
      EXPECT_EQ(a.adjusted.clusters[i].proxy, b.adjusted.clusters[i].proxy);
    }
    EXPECT_EQ(a.adjusted.events.size(), b.adjusted.events.size());
    EXPECT_EQ(a.classification, b.classification);
  }
}

TEST_F(ClusteringPropertyTest, FormationDisjointAdjustmentPartitions) {
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng);
    const auto r = cluster_network(inst.geo.graph, inst.tables.hop, inst.metrics);
    EXPECT_TRUE(check_partition(r.formed, inst.geo.graph, false).passed);
    EXPECT_TRUE(check_partition(r.adjusted, inst.geo.graph, true).passed);
    for (const ClusterState* s : {&r.formed, &r.adjusted}) {
      for (const auto& c : s->clusters) {
        if (c.proxy) {
          EXPECT_TRUE(inst.geo.graph.adjacent(c.master, *c.proxy));
        }
        EXPECT_TRUE(c.contains(c.master));
      }
    }
    if (r.classification == PerfectionClass::kPerfect) {
      EXPECT_TRUE(r.formed.critical.empty());
    }
    EXPECT_NE(r.classification, PerfectionClass::kImperfect);
  }
}

TEST_F(ClusteringPropertyTest, MastersOutrankEverythingStillOpen) {
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng);
    const WeightRanking ranking(inst.metrics);
    const ClusterState s =
        run_m_dsec(inst.geo.graph, inst.tables.hop, inst.metrics);
    std::set<NodeId> settled;
    for (const ClusterEvent& e : s.events) {
      if (e.action == "form_cluster") settled.insert(e.nodes.begin(), e.nodes.end());
      if (e.action == "defer") settled.insert(e.node);
      if (e.action != "elect_master") continue;
      for (NodeId v = 0; v < inst.geo.graph.size(); ++v) {
        if (v == e.node || settled.count(v)) continue;
        EXPECT_TRUE(ranking.outranks(e.node, v))
            << "master " << e.node << " elected over open node " << v;
      }
    }
  }
}

TEST_F(ClusteringPropertyTest, HiddenMastersOfTypeOneOutweighAProxy) {
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng);
    const ClusterState s =
        run_m_dsec(inst.geo.graph, inst.tables.hop, inst.metrics);
    for (NodeId h : s.hidden_masters_1) {
      bool found = false;
      for (NodeId v : inst.geo.graph.neighbors(h)) {
        found = found || (s.statuses[v] == NodeStatus::kProxy &&
                          inst.metrics[v].weight < inst.metrics[h].weight);
      }
      EXPECT_TRUE(found) << "node " << h;
      EXPECT_TRUE(std::binary_search(s.critical.begin(), s.critical.end(), h));
    }
    for (NodeId h : s.hidden_masters_2) {
      EXPECT_TRUE(std::binary_search(s.deferred.begin(), s.deferred.end(), h));
    }
    for (NodeId d : s.deferred) {
      EXPECT_FALSE(std::any_of(s.clusters.begin(), s.clusters.end(),
                               [&](const ClusterRecord& c) {
                                 return c.master == d || c.proxy == d;
                               }));
    }
  }
}

}  // namespace
}  // namespace mdseca
