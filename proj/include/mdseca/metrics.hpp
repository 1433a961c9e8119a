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

#ifndef MDSECA_METRICS_HPP_
#define MDSECA_METRICS_HPP_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "mdseca/graph.hpp"

namespace mdseca {

// Denominator used for the mean hop / mean Euclidean distances.
enum class MeanDivisor {
  kOthers,  // |V| - 1, the other nodes
  kAll,     // |V|
};

struct WeightConfig {
  // Factors for deg, CCI, 1/ecc, 1/MHD, 1/MED and NS, in that order.
  std::array<double, 6> alphas{1.0 / 6, 1.0 / 6, 1.0 / 6,
                               1.0 / 6, 1.0 / 6, 1.0 / 6};
  double ns_threshold = 100.0;
  MeanDivisor mean_divisor = MeanDivisor::kOthers;
};

// Strong, medium and weak neighbour counts (m1, m2, m3).
struct NeighborCounts {
  int strong = 0;
  int medium = 0;
  int weak = 0;

  int total() const { return strong + medium + weak; }
  friend bool operator==(const NeighborCounts&, const NeighborCounts&) = default;
};

// c(u|v) and c(v|u) for an ordered pair (u, v).
struct CloserCounts {
  int closer_to_first = 0;
  int closer_to_second = 0;

  int difference() const { return closer_to_first - closer_to_second; }
  friend bool operator==(const CloserCounts&, const CloserCounts&) = default;
};

struct PathStatistics {
  int eccentricity = 0;
  double mean_hop = 0.0;
  double mean_euclid = 0.0;
};

struct NodeMetrics {
  int degree = 0;
  int g_h = 0;
  int g_ed = 0;
  double cci = 0.0;
  int ecc = 0;
  double mhd = 0.0;
  double med = 0.0;
  // Absent when NS came from an override and no range is known.
  std::optional<NeighborCounts> categories;
  double ns = 0.0;
  double weight = 0.0;
};

// Per-node values that replace recomputation (fixture mode).
struct MetricOverrides {
  std::optional<std::vector<double>> ns;
  std::optional<std::vector<double>> weight;
  std::optional<std::vector<int>> g_h;
  std::optional<std::vector<int>> g_ed;

  bool empty() const { return !ns && !weight && !g_h && !g_ed; }
};

CloserCounts closer_hop_cardinalities(NodeId u, NodeId v, const HopMatrix& hop);
CloserCounts closer_euclidean_cardinalities(NodeId u, NodeId v,
                                            const EuclidMatrix& euclid);

int hop_closeness_index(NodeId u, const HopMatrix& hop);
int euclidean_closeness_index(NodeId u, const EuclidMatrix& euclid);
double combined_closeness_index(int g_h, int g_ed);

// Bands: strong [0, r/2], medium (r/2, 3r/4], weak (3r/4, r].
NeighborCounts neighbor_categories(NodeId u, const NetworkGraph& graph,
                                   const EuclidMatrix& euclid,
                                   std::optional<double> range);
double neighbor_strength(const NeighborCounts& counts, double threshold);

PathStatistics path_statistics(NodeId u, const HopMatrix& hop,
                               const EuclidMatrix& euclid,
                               MeanDivisor divisor = MeanDivisor::kOthers);

// W(u) from the six parameters. Throws InvalidArgument when ecc, MHD or MED
// is zero.
double node_weight(const NodeMetrics& metrics, const WeightConfig& config);

// Metrics for every node. Overrides take precedence over recomputation; a
// single-node network gets weight 0 and no path statistics.
std::vector<NodeMetrics> compute_metrics(const NetworkGraph& graph,
                                         const DistanceTables& tables,
                                         const WeightConfig& config,
                                         const MetricOverrides& overrides = {});

// Total order used everywhere a "maximum weight" node is extracted: higher
// weight, then higher NS, then lower id.
class WeightRanking {
 public:
  WeightRanking() = default;
  explicit WeightRanking(std::span<const NodeMetrics> metrics);

  std::size_t size() const { return weight_.size(); }
  double weight(NodeId u) const { return weight_[u]; }
  double ns(NodeId u) const { return ns_[u]; }

  bool outranks(NodeId a, NodeId b) const;

  // Highest-ranked node of `nodes`, or nullopt when empty.
  std::optional<NodeId> best(std::span<const NodeId> nodes) const;

  // All nodes, highest rank first.
  std::vector<NodeId> descending() const;

 private:
  std::vector<double> weight_;
  std::vector<double> ns_;
};

}  // namespace mdseca

#endif  // MDSECA_METRICS_HPP_
