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

#include "mdseca/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace mdseca {

namespace {

template <typename Distance>
CloserCounts count_closer(NodeId u, NodeId v, std::size_t n,
                          Distance&& distance) {
  if (u == v) {
    throw InvalidArgument("closer-set cardinalities need distinct nodes");
  }
  CloserCounts counts;
  for (NodeId w = 0; w < n; ++w) {
    const auto du = distance(u, w);
    const auto dv = distance(v, w);
    if (du < dv) {
      ++counts.closer_to_first;
    } else if (dv < du) {
      ++counts.closer_to_second;
    }
  }
  return counts;
}

void check_override_size(const char* name, std::size_t got, std::size_t n) {
  if (got != n) {
    throw FormatError(std::string(name) + " override has " +
                      std::to_string(got) + " entries, expected " +
                      std::to_string(n));
  }
}

}  // namespace

CloserCounts closer_hop_cardinalities(NodeId u, NodeId v,
                                      const HopMatrix& hop) {
  return count_closer(u, v, hop.size(), [&](NodeId a, NodeId w) {
    return hop.checked(a, w);
  });
}

CloserCounts closer_euclidean_cardinalities(NodeId u, NodeId v,
                                            const EuclidMatrix& euclid) {
  return count_closer(u, v, euclid.size(),
                      [&](NodeId a, NodeId w) { return euclid(a, w); });
}

int hop_closeness_index(NodeId u, const HopMatrix& hop) {
  int g = 0;
  for (NodeId v = 0; v < hop.size(); ++v) {
    if (v != u) g += closer_hop_cardinalities(u, v, hop).difference();
  }
  return g;
}

int euclidean_closeness_index(NodeId u, const EuclidMatrix& euclid) {
  int g = 0;
  for (NodeId v = 0; v < euclid.size(); ++v) {
    if (v != u) g += closer_euclidean_cardinalities(u, v, euclid).difference();
  }
  return g;
}

double combined_closeness_index(int g_h, int g_ed) {
  return (static_cast<double>(g_h) + static_cast<double>(g_ed)) / 2.0;
}

NeighborCounts neighbor_categories(NodeId u, const NetworkGraph& graph,
                                   const EuclidMatrix& euclid,
                                   std::optional<double> range) {
  if (!range) {
    throw ConfigurationError(
        "neighbour categories need a transmission range (or an NS override)");
  }
  const double r = *range;
  NeighborCounts counts;
  for (NodeId v : graph.neighbors(u)) {
    const double d = euclid(u, v);
    if (d <= r / 2.0) {
      ++counts.strong;
    } else if (d <= 3.0 * r / 4.0) {
      ++counts.medium;
    } else {
      ++counts.weak;
    }
  }
  return counts;
}

double neighbor_strength(const NeighborCounts& counts, double threshold) {
  return (counts.strong + counts.medium / 2.0 + counts.weak / 4.0) * threshold;
}

PathStatistics path_statistics(NodeId u, const HopMatrix& hop,
                               const EuclidMatrix& euclid,
                               MeanDivisor divisor) {
  const std::size_t n = hop.size();
  if (n < 2) {
    throw InvalidArgument("path statistics need at least two nodes");
  }
  PathStatistics stats;
  long hop_sum = 0;
  double euclid_sum = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const int h = hop.checked(u, v);
    stats.eccentricity = std::max(stats.eccentricity, h);
    hop_sum += h;
    euclid_sum += euclid(u, v);
  }
  const double denom =
      static_cast<double>(divisor == MeanDivisor::kOthers ? n - 1 : n);
  stats.mean_hop = static_cast<double>(hop_sum) / denom;
  stats.mean_euclid = euclid_sum / denom;
  return stats;
}

double node_weight(const NodeMetrics& m, const WeightConfig& config) {
  if (m.ecc == 0 || m.mhd == 0.0 || m.med == 0.0) {
    throw InvalidArgument(
        "weight undefined: eccentricity, MHD or MED is zero");
  }
  const auto& a = config.alphas;
  return a[0] * m.degree + a[1] * m.cci + a[2] * (1.0 / m.ecc) +
         a[3] * (1.0 / m.mhd) + a[4] * (1.0 / m.med) + a[5] * m.ns;
}

std::vector<NodeMetrics> compute_metrics(const NetworkGraph& graph,
                                         const DistanceTables& tables,
                                         const WeightConfig& config,
                                         const MetricOverrides& overrides) {
  const std::size_t n = graph.size();
  if (tables.hop.size() != n || tables.euclid.size() != n) {
    throw InvalidArgument("distance tables do not match the graph size");
  }
  if (overrides.ns) check_override_size("ns", overrides.ns->size(), n);
  if (overrides.weight) {
    check_override_size("weight", overrides.weight->size(), n);
  }
  if (overrides.g_h) check_override_size("g_h", overrides.g_h->size(), n);
  if (overrides.g_ed) check_override_size("g_ed", overrides.g_ed->size(), n);

  std::vector<NodeMetrics> out(n);
  for (NodeId u = 0; u < n; ++u) {
    NodeMetrics& m = out[u];
    m.degree = static_cast<int>(graph.degree(u));
    m.g_h = overrides.g_h ? (*overrides.g_h)[u]
                          : hop_closeness_index(u, tables.hop);
    m.g_ed = overrides.g_ed ? (*overrides.g_ed)[u]
                            : euclidean_closeness_index(u, tables.euclid);
    m.cci = combined_closeness_index(m.g_h, m.g_ed);
    if (graph.range()) {
      m.categories =
          neighbor_categories(u, graph, tables.euclid, graph.range());
    }
    if (overrides.ns) {
      m.ns = (*overrides.ns)[u];
    } else {
      m.categories =
          neighbor_categories(u, graph, tables.euclid, graph.range());
      m.ns = neighbor_strength(*m.categories, config.ns_threshold);
    }
    if (n > 1) {
      const PathStatistics stats =
          path_statistics(u, tables.hop, tables.euclid, config.mean_divisor);
      m.ecc = stats.eccentricity;
      m.mhd = stats.mean_hop;
      m.med = stats.mean_euclid;
    }
    if (overrides.weight) {
      m.weight = (*overrides.weight)[u];
    } else if (n > 1) {
      m.weight = node_weight(m, config);
    }
  }
  return out;
}

WeightRanking::WeightRanking(std::span<const NodeMetrics> metrics) {
  weight_.reserve(metrics.size());
  ns_.reserve(metrics.size());
  for (const auto& m : metrics) {
    weight_.push_back(m.weight);
    ns_.push_back(m.ns);
  }
}

bool WeightRanking::outranks(NodeId a, NodeId b) const {
  if (weight_[a] != weight_[b]) return weight_[a] > weight_[b];
  if (ns_[a] != ns_[b]) return ns_[a] > ns_[b];
  return a < b;
}

std::optional<NodeId> WeightRanking::best(std::span<const NodeId> nodes) const {
  if (nodes.empty()) return std::nullopt;
  NodeId top = nodes.front();
  for (NodeId u : nodes.subspan(1)) {
    if (outranks(u, top)) top = u;
  }
  return top;
}

std::vector<NodeId> WeightRanking::descending() const {
  std::vector<NodeId> order(weight_.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(),
            [this](NodeId a, NodeId b) { return outranks(a, b); });
  return order;
}

}  // namespace mdseca
