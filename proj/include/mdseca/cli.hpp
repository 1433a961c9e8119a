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

#ifndef MDSECA_CLI_HPP_
#define MDSECA_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

namespace mdseca {

enum class CommandKind { kCluster, kSimulate, kVerify, kMetrics };
enum class OutputFormat { kJson, kDot };

struct Command {
  CommandKind kind = CommandKind::kCluster;
  std::optional<std::filesystem::path> fixture;
  std::optional<std::filesystem::path> scenario;
  std::optional<std::filesystem::path> out;
  // Cluster report consumed by `verify`.
  std::optional<std::filesystem::path> report;
  // NDJSON maintenance log written by `simulate`.
  std::optional<std::filesystem::path> events;
  OutputFormat format = OutputFormat::kJson;
  std::optional<std::uint64_t> seed;
  bool recompute_weights = false;
  bool force_recluster = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kPropertyFailure = 2;
inline constexpr int kDisconnected = 3;
}  // namespace exit_code

// `args` excludes the program name. Throws UsageError.
Command parse_inputs(std::span<const std::string> args);

// Runs one command; documents go to `out` unless --out is given.
int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace mdseca

#endif  // MDSECA_CLI_HPP_
