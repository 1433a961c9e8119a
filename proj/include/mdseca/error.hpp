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

#ifndef MDSECA_ERROR_HPP_
#define MDSECA_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdseca {

using NodeId = std::size_t;

// Precondition violations on public operations (bad sizes, u == v, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed fixture, scenario or report documents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A required parameter (for example the transmission range) is missing.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A global-distance metric was asked for a node that cannot reach everyone.
class UnreachableNodeError : public std::runtime_error {
 public:
  UnreachableNodeError(NodeId from, NodeId to);

  NodeId from() const { return from_; }
  NodeId to() const { return to_; }

 private:
  NodeId from_;
  NodeId to_;
};

// Clustering refuses disconnected topologies; the components are reported.
class DisconnectedGraphError : public std::runtime_error {
 public:
  explicit DisconnectedGraphError(std::vector<std::vector<NodeId>> components);

  const std::vector<std::vector<NodeId>>& components() const {
    return components_;
  }

 private:
  std::vector<std::vector<NodeId>> components_;
};

// Exhaustive searches that would exceed their size bound.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace mdseca

#endif  // MDSECA_ERROR_HPP_
