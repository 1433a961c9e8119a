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

#include "mdseca/cli.hpp"

#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mdseca/cluster.hpp"
#include "mdseca/error.hpp"
#include "mdseca/fixture.hpp"
#include "mdseca/metrics.hpp"
#include "mdseca/mobility.hpp"
#include "mdseca/report.hpp"
#include "mdseca/verify.hpp"

namespace mdseca {

namespace {

struct Network {
  NetworkGraph graph;
  DistanceTables tables;
  std::vector<NodeMetrics> metrics;
};

struct HelpRequested {
  std::string text;
};

CLI::App& build_app(CLI::App& app, Command& cmd, std::string& format) {
  app.require_subcommand(1);
  auto add = [&](const char* name, const char* description) {
    CLI::App* sub = app.add_subcommand(name, description);
    auto* fixture = sub->add_option("--fixture", cmd.fixture,
                                    "Fixture document (explicit tables)");
    auto* scenario = sub->add_option("--scenario", cmd.scenario,
                                     "Scenario document (random deployment)");
    fixture->excludes(scenario);
    sub->add_option("--out", cmd.out, "Output path (default: stdout)");
    sub->add_option("--format", format, "json or dot")
        ->check(CLI::IsMember({"json", "dot"}));
    sub->add_option("--seed", cmd.seed, "Overrides the scenario seed");
    sub->add_flag("--recompute-weights", cmd.recompute_weights,
                  "Recompute weights at every refresh (simulate)");
    sub->add_flag("--force-recluster", cmd.force_recluster,
                  "Re-form clusters on the final topology (simulate)");
    return sub;
  };
  add("cluster", "Form and adjust clusters, emit the cluster report");
  add("simulate", "Run the mobility simulation with maintenance")
      ->add_option("--events", cmd.events, "NDJSON maintenance event log");
  add("verify", "Check a cluster report against the network")
      ->add_option("--report", cmd.report, "Cluster report to check")
      ->required();
  add("metrics", "Emit per-node metrics");
  return app;
}

Command parse_command(std::span<const std::string> args, HelpRequested* help) {
  Command cmd;
  std::string format = "json";
  CLI::App app{"MANET double-star clustering engine and simulator", "mdseca"};
  build_app(app, cmd, format);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    if (help == nullptr) throw UsageError("help requested");
    const CLI::App* target = &app;
    for (const CLI::App* sub : app.get_subcommands()) target = sub;
    help->text = target->help();
    return cmd;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  const std::string name = app.get_subcommands().front()->get_name();
  if (name == "cluster") cmd.kind = CommandKind::kCluster;
  if (name == "simulate") cmd.kind = CommandKind::kSimulate;
  if (name == "verify") cmd.kind = CommandKind::kVerify;
  if (name == "metrics") cmd.kind = CommandKind::kMetrics;
  cmd.format = format == "dot" ? OutputFormat::kDot : OutputFormat::kJson;

  if (!cmd.fixture && !cmd.scenario) {
    throw UsageError(name + ": one of --fixture or --scenario is required");
  }
  if (cmd.kind == CommandKind::kSimulate && !cmd.scenario) {
    throw UsageError("simulate needs --scenario");
  }
  if (cmd.format == OutputFormat::kDot &&
      (cmd.kind == CommandKind::kMetrics || cmd.kind == CommandKind::kVerify)) {
    throw UsageError(name + " emits JSON only");
  }
  return cmd;
}

Scenario scenario_for(const Command& cmd) {
  Scenario s = load_scenario(*cmd.scenario);
  if (cmd.seed) s.seed = *cmd.seed;
  return s;
}

void require_connected(const NetworkGraph& graph) {
  if (auto components = connected_components(graph); components.size() > 1) {
    throw DisconnectedGraphError(std::move(components));
  }
}

Network load_network(const Command& cmd) {
  Network net;
  if (cmd.fixture) {
    Fixture f = load_fixture(*cmd.fixture);
    require_connected(f.graph);
    net.metrics = compute_metrics(f.graph, f.tables, f.config, f.overrides);
    net.graph = std::move(f.graph);
    net.tables = std::move(f.tables);
    return net;
  }
  const Scenario s = scenario_for(cmd);
  const auto positions = deploy_random(s.node_count, s.terrain_size, s.seed);
  net.graph = build_graph(positions, s.range);
  require_connected(net.graph);
  net.tables = distance_tables(net.graph, positions);
  net.metrics = compute_metrics(net.graph, net.tables, s.weight_config());
  return net;
}

void emit(const Command& cmd, const std::string& text, std::ostream& out) {
  if (cmd.out) {
    write_text_file(*cmd.out, text);
  } else {
    out << text;
  }
}

int run_cluster(const Command& cmd, std::ostream& out) {
  const Network net = load_network(cmd);
  const ClusteringResult result =
      cluster_network(net.graph, net.tables.hop, net.metrics);
  if (cmd.format == OutputFormat::kDot) {
    emit(cmd, cluster_dot(result.adjusted, net.graph), out);
  } else {
    emit(cmd,
         cluster_report_json(result.adjusted, result.classification,
                             &result.formed),
         out);
  }
  return exit_code::kOk;
}

int run_metrics(const Command& cmd, std::ostream& out) {
  const Network net = load_network(cmd);
  emit(cmd, metrics_json(net.metrics), out);
  return exit_code::kOk;
}

int run_verify(const Command& cmd, std::ostream& out) {
  const Network net = load_network(cmd);
  const std::string text = read_text_file(*cmd.report);
  const ClusterState state = parse_cluster_report(text);
  if (state.node_count() != net.graph.size()) {
    throw FormatError("report covers " + std::to_string(state.node_count()) +
                      " nodes, network has " +
                      std::to_string(net.graph.size()));
  }
  const auto doc = nlohmann::json::parse(text);
  VerifyOptions options;
  options.check_edge_domination =
      doc.value("classification", nlohmann::json()) == "perfect";
  const PropertyReport report =
      verify_state(state, net.graph, net.tables.hop, options);
  emit(cmd, property_report_json(report), out);
  return report.all_passed() ? exit_code::kOk : exit_code::kPropertyFailure;
}

int run_simulate(const Command& cmd, std::ostream& out, std::ostream& err) {
  const Scenario scenario = scenario_for(cmd);
  SimulationOptions options;
  options.recompute_weights = cmd.recompute_weights;
  options.force_recluster = cmd.force_recluster;
  const SimulationResult result = run_simulation(scenario, options);
  if (cmd.events) write_text_file(*cmd.events, events_ndjson(result.events));
  if (cmd.format == OutputFormat::kDot) {
    emit(cmd, cluster_dot(result.final_state, result.final_graph), out);
  } else {
    emit(cmd, simulation_report_json(result), out);
  }
  for (const auto& s : result.summaries) {
    for (const auto& w : s.warnings) {
      err << "warning: t=" << s.time << ": " << w << "\n";
    }
  }
  return result.all_checks_passed() ? exit_code::kOk
                                    : exit_code::kPropertyFailure;
}

}  // namespace

Command parse_inputs(std::span<const std::string> args) {
  return parse_command(args, nullptr);
}

int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err) {
  try {
    HelpRequested help;
    const Command cmd = parse_command(args, &help);
    if (!help.text.empty()) {
      out << help.text;
      return exit_code::kOk;
    }
    switch (cmd.kind) {
      case CommandKind::kCluster:
        return run_cluster(cmd, out);
      case CommandKind::kMetrics:
        return run_metrics(cmd, out);
      case CommandKind::kVerify:
        return run_verify(cmd, out);
      case CommandKind::kSimulate:
        return run_simulate(cmd, out, err);
    }
  } catch (const DisconnectedGraphError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kDisconnected;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }
  return exit_code::kUsage;
}

}  // namespace mdseca
