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

#include "mdseca/cluster.hpp"

#include <algorithm>
#include <array>

namespace mdseca {

namespace {

constexpr std::array<std::pair<NodeStatus, std::string_view>, 6> kStatusNames{{
    {NodeStatus::kMaster, "master"},
    {NodeStatus::kProxy, "proxy"},
    {NodeStatus::kSlave, "slave"},
    {NodeStatus::kHiddenMasterI, "hm1"},
    {NodeStatus::kHiddenMasterII, "hm2"},
    {NodeStatus::kUnclustered, "unclustered"},
}};

void sort_unique(std::vector<NodeId>& nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
}

std::vector<NodeId> flagged(const std::vector<char>& flags) {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < flags.size(); ++u) {
    if (flags[u]) out.push_back(u);
  }
  return out;
}

void check_inputs(const NetworkGraph& graph, const HopMatrix& hop,
                  std::span<const NodeMetrics> metrics) {
  if (graph.size() == 0) throw InvalidArgument("cannot cluster an empty graph");
  if (hop.size() != graph.size() || metrics.size() != graph.size()) {
    throw InvalidArgument("hop table or metrics do not match the graph size");
  }
}

}  // namespace

std::string_view to_string(NodeStatus status) {
  for (const auto& [value, name] : kStatusNames) {
    if (value == status) return name;
  }
  return "unclustered";
}

NodeStatus parse_node_status(std::string_view text) {
  for (const auto& [value, name] : kStatusNames) {
    if (name == text) return value;
  }
  throw FormatError("unknown node status '" + std::string(text) + "'");
}

std::string_view to_string(PerfectionClass classification) {
  switch (classification) {
    case PerfectionClass::kPerfect:
      return "perfect";
    case PerfectionClass::kFairlyPerfect:
      return "fairly_perfect";
    case PerfectionClass::kImperfect:
      return "imperfect";
  }
  return "imperfect";
}

bool ClusterRecord::contains(NodeId u) const {
  return std::binary_search(members.begin(), members.end(), u);
}

std::vector<NodeId> ClusterRecord::slaves() const {
  std::vector<NodeId> out;
  for (NodeId u : members) {
    if (u != master && (!proxy || u != *proxy)) out.push_back(u);
  }
  return out;
}

std::optional<std::size_t> ClusterState::cluster_index(NodeId u) const {
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (clusters[i].contains(u)) return i;
  }
  return std::nullopt;
}

std::vector<ElectedPair> ClusterState::pairs() const {
  std::vector<ElectedPair> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back({c.master, c.proxy});
  return out;
}

NeighborPartitions neighbor_partitions(NodeId u, const ClusterState& state,
                                       const NetworkGraph& graph,
                                       const WeightRanking& ranking) {
  NeighborPartitions parts;
  const double w = ranking.weight(u);
  for (NodeId v : graph.neighbors(u)) {
    const NodeStatus s = state.statuses[v];
    if (s != NodeStatus::kMaster && ranking.weight(v) > w) {
      parts.n_prime.push_back(v);
    }
    if (!state.is_leader(v) && ranking.weight(v) < w) {
      parts.n_dprime.push_back(v);
    }
    const auto& around = graph.neighbors(v);
    if (std::any_of(around.begin(), around.end(), [&](NodeId x) {
          return state.statuses[x] == NodeStatus::kMaster;
        })) {
      parts.n_m.push_back(v);
    }
  }
  return parts;
}

bool master_eligibility(NodeId candidate, std::span<const ElectedPair> elected,
                        const HopMatrix& hop) {
  if (elected.empty()) return true;
  auto far_enough = [&](const ElectedPair& pair) {
    const NodeId p = pair.proxy.value_or(pair.master);
    return hop.checked(candidate, pair.master) >= 3 &&
           hop.checked(candidate, p) >= 3;
  };
  for (std::size_t i = 0; i < elected.size(); ++i) {
    const NodeId m = elected[i].master;
    const NodeId p = elected[i].proxy.value_or(m);
    const int dm = hop.checked(candidate, m);
    const int dp = hop.checked(candidate, p);
    if (!((dm == 3 && dp >= 3) || (dp == 3 && dm >= 3))) continue;
    bool rest_ok = true;
    for (std::size_t k = 0; k < elected.size() && rest_ok; ++k) {
      if (k != i) rest_ok = far_enough(elected[k]);
    }
    if (rest_ok) return true;
  }
  return false;
}

std::optional<NodeId> elect_proxy(NodeId master,
                                  std::span<const ElectedPair> elected,
                                  const NetworkGraph& graph,
                                  const WeightRanking& ranking,
                                  const HopMatrix& hop) {
  std::vector<NodeId> candidates;
  for (NodeId v : graph.neighbors(master)) {
    const bool clear = std::all_of(
        elected.begin(), elected.end(), [&](const ElectedPair& pair) {
          return hop.checked(v, pair.master) >= 3 &&
                 hop.checked(v, pair.proxy.value_or(pair.master)) >= 3;
        });
    if (clear) candidates.push_back(v);
  }
  return ranking.best(candidates);
}

ClusterState run_m_dsec(const NetworkGraph& graph, const HopMatrix& hop,
                        std::span<const NodeMetrics> metrics) {
  check_inputs(graph, hop, metrics);
  auto components = connected_components(graph);
  if (components.size() > 1) throw DisconnectedGraphError(std::move(components));

  const std::size_t n = graph.size();
  const WeightRanking ranking(metrics);
  ClusterState state;
  state.statuses.assign(n, NodeStatus::kUnclustered);

  std::vector<char> in_s(n, 0);
  std::vector<char> in_p(n, 0);
  std::vector<char> in_cr(n, 0);
  std::vector<char> in_hm2(n, 0);
  std::vector<ElectedPair> elected;

  auto log = [&](std::string action, NodeId node,
                 std::optional<NodeId> partner = std::nullopt,
                 std::vector<NodeId> nodes = {}) {
    state.events.push_back({Phase::kFormation, std::move(action), node,
                            partner, std::move(nodes)});
  };

  auto form_cluster = [&](NodeId x) {
    log("elect_master", x);
    const auto y = elect_proxy(x, elected, graph, ranking, hop);
    if (y) {
      log("elect_proxy", *y, x);
    } else {
      log("no_proxy", x);
    }
    state.statuses[x] = NodeStatus::kMaster;
    if (y) state.statuses[*y] = NodeStatus::kProxy;

    ClusterRecord record;
    record.id = state.clusters.size() + 1;
    record.master = x;
    record.proxy = y;
    std::vector<NodeId> claim{x};
    const auto& nx = graph.neighbors(x);
    claim.insert(claim.end(), nx.begin(), nx.end());
    if (y) {
      claim.push_back(*y);
      const auto& ny = graph.neighbors(*y);
      claim.insert(claim.end(), ny.begin(), ny.end());
    }
    sort_unique(claim);
    for (NodeId u : claim) {
      if (in_s[u]) continue;  // already claimed by an earlier pair
      in_s[u] = 1;
      record.members.push_back(u);
      if (!state.is_leader(u)) state.statuses[u] = NodeStatus::kSlave;
    }
    log("form_cluster", x, y, record.members);

    if (y) {
      auto hidden = neighbor_partitions(*y, state, graph, ranking).n_prime;
      if (!hidden.empty()) log("hidden_masters_1", *y, x, hidden);
      for (NodeId h : hidden) in_cr[h] = 1;
    }
    state.clusters.push_back(std::move(record));
    elected.push_back({x, y});
  };

  const auto order = ranking.descending();
  form_cluster(order.front());
  for (;;) {
    const auto next = std::find_if(order.begin(), order.end(), [&](NodeId u) {
      return !in_s[u] && !in_p[u];
    });
    if (next == order.end()) break;
    const NodeId z = *next;
    if (!master_eligibility(z, elected, hop)) {
      in_p[z] = 1;
      state.deferred.push_back(z);
      log("defer", z);
      continue;
    }
    // Deferred nodes that outweigh the new master and touch no proxy are
    // type II hidden masters.
    std::vector<NodeId> hm2;
    for (NodeId d : state.deferred) {
      if (in_s[d] || in_hm2[d] || !ranking.outranks(d, z)) continue;
      const bool near_proxy = std::any_of(
          elected.begin(), elected.end(), [&](const ElectedPair& pair) {
            return pair.proxy && graph.adjacent(d, *pair.proxy);
          });
      if (!near_proxy) hm2.push_back(d);
    }
    if (!hm2.empty()) {
      for (NodeId d : hm2) in_hm2[d] = 1;
      log("hidden_masters_2", z, std::nullopt, hm2);
    }
    form_cluster(z);
  }

  state.hidden_masters_1 = flagged(in_cr);
  state.hidden_masters_2 = flagged(in_hm2);
  std::sort(state.deferred.begin(), state.deferred.end());
  for (NodeId u = 0; u < n; ++u) {
    if (in_cr[u]) {
      state.statuses[u] = NodeStatus::kHiddenMasterI;
      state.critical.push_back(u);
    } else if (!in_s[u]) {
      state.statuses[u] =
          in_hm2[u] ? NodeStatus::kHiddenMasterII : NodeStatus::kUnclustered;
      state.critical.push_back(u);
    }
  }
  return state;
}

namespace {

// Working view over a state while the adjustment loop mutates it.
class Adjuster {
 public:
  Adjuster(ClusterState& state, const NetworkGraph& graph,
           const WeightRanking& ranking)
      : state_(state),
        graph_(graph),
        ranking_(ranking),
        owner_(state.node_count()),
        open_(state.node_count(), 0),
        hm1_(state.node_count(), 0) {
    for (std::size_t i = 0; i < state_.clusters.size(); ++i) {
      for (NodeId u : state_.clusters[i].members) owner_[u] = i;
    }
    for (NodeId c : state_.critical) open_[c] = 1;
    for (NodeId h : state_.hidden_masters_1) hm1_[h] = 1;
  }

  void run() {
    std::vector<char> processed(state_.node_count(), 0);
    std::vector<NodeId> leftovers;
    for (;;) {
      std::vector<NodeId> pending;
      for (NodeId u = 0; u < state_.node_count(); ++u) {
        if (open_[u] && !processed[u]) pending.push_back(u);
      }
      const auto next = ranking_.best(pending);
      if (!next) break;
      const NodeId c = *next;
      processed[c] = 1;
      log("extract_critical", c);
      if (adjacent_to_master(c)) {
        log("skip_adjacent_master", c);
        if (!owner_[c]) leftovers.push_back(c);
        continue;
      }
      const bool formed = (hm1_[c] && owner_[c]) ? regroup_hidden_master(c)
                                                 : regroup_unclustered(c);
      if (!formed && !owner_[c]) leftovers.push_back(c);
    }
    settle_leftovers(leftovers);
    finalize();
  }

 private:
  void log(std::string action, NodeId node,
           std::optional<NodeId> partner = std::nullopt,
           std::vector<NodeId> nodes = {}) {
    state_.events.push_back({Phase::kAdjustment, std::move(action), node,
                             partner, std::move(nodes)});
  }

  bool adjacent_to_master(NodeId u) const {
    const auto& around = graph_.neighbors(u);
    return std::any_of(around.begin(), around.end(), [&](NodeId v) {
      return state_.statuses[v] == NodeStatus::kMaster;
    });
  }

  bool in_adjusted(NodeId u) const {
    return owner_[u] && state_.clusters[*owner_[u]].adjusted;
  }

  // Leaders and members of adjusted clusters stay put; ordinary slaves move
  // only when no Master is adjacent to them.
  bool absorbable(NodeId u) const {
    if (state_.is_leader(u) || in_adjusted(u)) return false;
    if (open_[u] || !owner_[u]) return true;
    return !adjacent_to_master(u);
  }

  std::vector<NodeId> absorbable_only(std::vector<NodeId> nodes) const {
    std::erase_if(nodes, [&](NodeId u) { return !absorbable(u); });
    return nodes;
  }

  NeighborPartitions partitions(NodeId u) const {
    return neighbor_partitions(u, state_, graph_, ranking_);
  }

  static std::vector<NodeId> without(std::vector<NodeId> nodes,
                                     const std::vector<NodeId>& removed) {
    std::erase_if(nodes, [&](NodeId u) {
      return std::find(removed.begin(), removed.end(), u) != removed.end();
    });
    return nodes;
  }

  // c is a type I hidden master next to proxy p: pair it with its best
  // neighbour other than p.
  bool regroup_hidden_master(NodeId c) {
    std::optional<NodeId> proxy;
    const auto& own = state_.clusters[*owner_[c]];
    if (own.proxy && graph_.adjacent(c, *own.proxy)) {
      proxy = own.proxy;
    } else {
      std::vector<NodeId> proxies;
      for (NodeId v : graph_.neighbors(c)) {
        if (state_.statuses[v] == NodeStatus::kProxy) proxies.push_back(v);
      }
      proxy = ranking_.best(proxies);
    }
    std::vector<NodeId> around;
    for (NodeId v : graph_.neighbors(c)) {
      if (v != proxy && absorbable(v)) around.push_back(v);
    }
    const auto partner = ranking_.best(around);
    if (!partner) {
      log("no_partner", c);
      return false;
    }
    const NodeId cp = *partner;
    std::vector<NodeId> extra;
    if (open_[cp] && !hm1_[cp] && !owner_[cp]) {
      extra = graph_.neighbors(cp);
    } else {
      extra = partitions(cp).n_dprime;
    }
    std::vector<NodeId> members = around;
    auto add = absorbable_only(std::move(extra));
    members.insert(members.end(), add.begin(), add.end());
    create_cluster(c, cp, std::move(members));
    return true;
  }

  // c is not a type I hidden master: use N''(c) \ N_m(c).
  bool regroup_unclustered(NodeId c) {
    const auto parts = partitions(c);
    auto candidates = absorbable_only(without(parts.n_dprime, parts.n_m));
    const auto partner = ranking_.best(candidates);
    if (!partner) {
      log("no_partner", c);
      return false;
    }
    const auto partner_parts = partitions(*partner);
    auto extra = absorbable_only(
        without(partner_parts.n_dprime, partner_parts.n_m));
    std::vector<NodeId> members = std::move(candidates);
    members.insert(members.end(), extra.begin(), extra.end());
    create_cluster(c, *partner, std::move(members));
    return true;
  }

  void create_cluster(NodeId master, NodeId proxy, std::vector<NodeId> members) {
    members.push_back(master);
    members.push_back(proxy);
    sort_unique(members);

    ClusterRecord record;
    record.id = next_id();
    record.master = master;
    record.proxy = proxy;
    record.members = members;
    record.adjusted = true;
    const std::size_t index = state_.clusters.size();
    state_.clusters.push_back(record);

    for (NodeId u : members) {
      if (owner_[u]) {
        auto& donor = state_.clusters[*owner_[u]].members;
        donor.erase(std::find(donor.begin(), donor.end(), u));
        log("prune", u, std::nullopt, {state_.clusters[*owner_[u]].id});
      }
      owner_[u] = index;
      open_[u] = 0;
      state_.statuses[u] = NodeStatus::kSlave;
    }
    state_.statuses[master] = NodeStatus::kMaster;
    state_.statuses[proxy] = NodeStatus::kProxy;
    log("adjusted_cluster", master, proxy, members);
  }

  // Uncovered nodes join an adjacent leader's cluster when there is one and
  // otherwise become masters on their own.
  void settle_leftovers(const std::vector<NodeId>& leftovers) {
    for (NodeId c : leftovers) {
      if (owner_[c]) continue;
      std::vector<NodeId> leaders;
      for (NodeId v : graph_.neighbors(c)) {
        if (state_.is_leader(v)) leaders.push_back(v);
      }
      if (const auto host = ranking_.best(leaders)) {
        const std::size_t index = *owner_[*host];
        auto& members = state_.clusters[index].members;
        members.insert(std::upper_bound(members.begin(), members.end(), c), c);
        owner_[c] = index;
        state_.statuses[c] = NodeStatus::kSlave;
        log("join_cluster", c, host, {state_.clusters[index].id});
        continue;
      }
      ClusterRecord record;
      record.id = next_id();
      record.master = c;
      record.members = {c};
      record.adjusted = true;
      owner_[c] = state_.clusters.size();
      state_.clusters.push_back(std::move(record));
      state_.statuses[c] = NodeStatus::kMaster;
      log("singleton_master", c);
    }
  }

  void finalize() {
    state_.critical.clear();
    for (NodeId u = 0; u < state_.node_count(); ++u) {
      if (!owner_[u]) {
        state_.critical.push_back(u);
        state_.statuses[u] = NodeStatus::kUnclustered;
      } else if (!state_.is_leader(u)) {
        state_.statuses[u] = NodeStatus::kSlave;
      }
    }
  }

  std::size_t next_id() const {
    std::size_t id = 0;
    for (const auto& c : state_.clusters) id = std::max(id, c.id);
    return id + 1;
  }

  ClusterState& state_;
  const NetworkGraph& graph_;
  const WeightRanking& ranking_;
  std::vector<std::optional<std::size_t>> owner_;
  std::vector<char> open_;
  std::vector<char> hm1_;
};

}  // namespace

ClusterState run_adjusted(const ClusterState& formed, const NetworkGraph& graph,
                          std::span<const NodeMetrics> metrics) {
  if (formed.node_count() != graph.size() || metrics.size() != graph.size()) {
    throw InvalidArgument("state or metrics do not match the graph size");
  }
  ClusterState state = formed;
  if (state.critical.empty()) return state;
  const WeightRanking ranking(metrics);
  Adjuster(state, graph, ranking).run();
  return state;
}

PerfectionClass classify(const ClusterState& formed,
                         const ClusterState& adjusted) {
  if (formed.critical.empty()) return PerfectionClass::kPerfect;
  if (adjusted.critical.empty()) return PerfectionClass::kFairlyPerfect;
  return PerfectionClass::kImperfect;
}

ClusteringResult cluster_network(const NetworkGraph& graph,
                                 const HopMatrix& hop,
                                 std::span<const NodeMetrics> metrics) {
  ClusteringResult result;
  result.formed = run_m_dsec(graph, hop, metrics);
  result.adjusted = run_adjusted(result.formed, graph, metrics);
  result.classification = classify(result.formed, result.adjusted);
  return result;
}

}  // namespace mdseca
