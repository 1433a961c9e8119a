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

#ifndef MDSECA_FIXTURE_HPP_
#define MDSECA_FIXTURE_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "mdseca/graph.hpp"
#include "mdseca/metrics.hpp"

namespace mdseca {

// A topology given explicitly as an edge list plus a Euclidean distance
// matrix, for networks whose node positions are not known.
struct Fixture {
  NetworkGraph graph;
  DistanceTables tables;
  MetricOverrides overrides;
  WeightConfig config;
};

// Uses `edges` verbatim and computes hop distances by BFS. Throws FormatError
// on a non-square, asymmetric or non-zero-diagonal matrix and on bad edges.
Fixture ingest_fixture(std::span<const Edge> edges, EuclidMatrix euclid,
                       MetricOverrides overrides = {},
                       WeightConfig config = {},
                       std::optional<double> range = std::nullopt);

// JSON document with `nodes`, `edges`, `euclid` and the optional fields
// `ns_override`, `weight_override`, `g_h_override`, `g_ed_override`,
// `ns_threshold`, `alphas`, `distance_mean_divisor` ("n_minus_1" | "n") and
// `range`.
Fixture parse_fixture(std::string_view text);
Fixture load_fixture(const std::filesystem::path& path);

std::string fixture_to_json(const Fixture& fixture);

}  // namespace mdseca

#endif  // MDSECA_FIXTURE_HPP_
