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

#ifndef MDSECA_GRAPH_HPP_
#define MDSECA_GRAPH_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mdseca/error.hpp"

namespace mdseca {

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

// Undirected edge, always stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool touches(NodeId w) const { return u == w || v == w; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Dense row-major square matrix.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{})
      : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * n_ + c];
  }

  std::span<const T> row(std::size_t r) const {
    return std::span<const T>(data_).subspan(r * n_, n_);
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using EuclidMatrix = SquareMatrix<double>;

// All-pairs hop distances. Pairs in different components are unreachable and
// read back as std::nullopt rather than a sentinel.
class HopMatrix {
 public:
  HopMatrix() = default;
  explicit HopMatrix(std::size_t n) : hops_(n, kUnreachable) {}

  std::size_t size() const { return hops_.size(); }

  std::optional<int> at(NodeId u, NodeId v) const {
    const int h = hops_(u, v);
    if (h == kUnreachable) return std::nullopt;
    return h;
  }
  bool reachable(NodeId u, NodeId v) const {
    return hops_(u, v) != kUnreachable;
  }
  // Checked access for connected graphs; throws UnreachableNodeError.
  int checked(NodeId u, NodeId v) const;

  void set(NodeId u, NodeId v, int hops) { hops_(u, v) = hops; }

  friend bool operator==(const HopMatrix&, const HopMatrix&) = default;

 private:
  static constexpr int kUnreachable = -1;
  SquareMatrix<int> hops_;
};

class NetworkGraph {
 public:
  NetworkGraph() = default;
  explicit NetworkGraph(std::size_t node_count,
                        std::optional<double> range = std::nullopt);

  std::size_t size() const { return neighbors_.size(); }
  std::optional<double> range() const { return range_; }

  // Throws InvalidArgument on self-loops or out-of-range ids. Duplicate
  // insertions are ignored.
  void add_edge(NodeId u, NodeId v);

  bool adjacent(NodeId u, NodeId v) const {
    return adjacency_[u * size() + v] != 0;
  }
  // Sorted ascending.
  const std::vector<NodeId>& neighbors(NodeId u) const { return neighbors_[u]; }
  std::size_t degree(NodeId u) const { return neighbors_[u].size(); }

  std::size_t edge_count() const { return edge_count_; }
  std::vector<Edge> edges() const;

  friend bool operator==(const NetworkGraph&, const NetworkGraph&) = default;

 private:
  std::optional<double> range_;
  std::vector<char> adjacency_;
  std::vector<std::vector<NodeId>> neighbors_;
  std::size_t edge_count_ = 0;
};

struct DistanceTables {
  HopMatrix hop;
  EuclidMatrix euclid;
};

// Uniform positions on [0, terrain_size]^2.
std::vector<Position> deploy_random(std::size_t n, double terrain_size,
                                    std::mt19937_64& rng);
std::vector<Position> deploy_random(std::size_t n, double terrain_size,
                                    std::uint64_t seed);

double euclidean_distance(const Position& a, const Position& b);

// Unit-disk graph: u ~ v iff ed(u, v) <= range. Ties at exactly `range` are
// adjacent.
NetworkGraph build_graph(std::span<const Position> positions, double range);

// Breadth-first search from every node.
HopMatrix hop_distance_table(const NetworkGraph& graph);

EuclidMatrix euclidean_distance_table(std::span<const Position> positions);

DistanceTables distance_tables(const NetworkGraph& graph,
                               std::span<const Position> positions);

// Components in order of their smallest node, each sorted ascending.
std::vector<std::vector<NodeId>> connected_components(const NetworkGraph& graph);
bool is_connected(const NetworkGraph& graph);

}  // namespace mdseca

#endif  // MDSECA_GRAPH_HPP_
