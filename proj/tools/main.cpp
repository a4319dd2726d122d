// Command line front end: auction path construction, epsilon scaling, and
// path-based flow solvers over DIMACS-style problem files.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathauction/apc.hpp"
#include "pathauction/awpc.hpp"
#include "pathauction/io.hpp"
#include "pathauction/oracles.hpp"
#include "pathauction/scaling.hpp"
#include "pathauction/transport.hpp"

namespace {

using nlohmann::ordered_json;
using namespace pathauction;

struct CommonOptions {
  std::string graph_file;
  double epsilon = 1.0;
  double eps0 = 0.0;  // 0 = derive from the graph
  double theta = 0.25;
  double eps_min = 0.01;
  std::string prices_file;
  std::string save_prices_file;
  std::string trace_file;
  std::string tie_break = "min-id";
  std::int64_t iter_limit = 0;
  double tolerance = 0.0;
  bool json = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_epsilon = true,
                bool with_schedule = false) {
  cmd->add_option("graph", opt.graph_file, "problem file")->required();
  if (with_epsilon) cmd->add_option("--epsilon", opt.epsilon, "price rise increment");
  if (with_schedule) {
    cmd->add_option("--eps0", opt.eps0, "initial epsilon (default: max arc length)");
    cmd->add_option("--theta", opt.theta, "reduction factor per phase");
    cmd->add_option("--eps-min", opt.eps_min, "final epsilon");
  }
  cmd->add_option("--prices", opt.prices_file, "initial prices file");
  cmd->add_option("--save-prices", opt.save_prices_file, "write final prices here");
  cmd->add_option("--trace", opt.trace_file, "write per-iteration records (JSONL, '-' = stdout)");
  cmd->add_option("--tie-break", opt.tie_break, "argmin tie rule")
      ->check(CLI::IsMember({"min-id"}));
  cmd->add_option("--iter-limit", opt.iter_limit, "step limit (0 = 50*N*(N+M))");
  cmd->add_option("--tolerance", opt.tolerance, "comparison tolerance");
  cmd->add_flag("--json", opt.json, "machine readable output");
}

SolverConfig to_config(const CommonOptions& opt, bool want_trace) {
  SolverConfig config;
  config.epsilon = opt.epsilon;
  config.tie_break = TieBreak::kMinId;
  config.iteration_limit = opt.iter_limit;
  config.tolerance = opt.tolerance;
  config.trace = want_trace;
  return config;
}

ScalingSchedule to_schedule(const CommonOptions& opt, const Graph& graph) {
  ScalingSchedule schedule = default_schedule(graph, opt.eps_min);
  if (opt.eps0 > 0.0) schedule.eps0 = std::max(opt.eps0, opt.eps_min);
  schedule.theta = opt.theta;
  schedule.eps_min = opt.eps_min;
  return schedule;
}

struct LoadedProblem {
  ParsedProblem parsed;
  PriceVector prices;
};

LoadedProblem load(const CommonOptions& opt, bool need_roles = true) {
  LoadedProblem loaded{parse_graph_file(read_file(opt.graph_file)), {}};
  if (need_roles && (!loaded.parsed.source || !loaded.parsed.sink)) {
    throw_error(ErrorCode::kInvalidArgument,
                "problem file must name a source and a sink node");
  }
  loaded.prices = opt.prices_file.empty()
                      ? PriceVector(loaded.parsed.graph.node_count(), 0.0)
                      : parse_prices(read_file(opt.prices_file),
                                     loaded.parsed.graph.node_count());
  return loaded;
}

ordered_json json_price_array(const PriceVector& prices) {
  ordered_json out = ordered_json::array();
  for (double p : prices) {
    if (std::isinf(p)) {
      out.push_back("inf");
    } else {
      out.push_back(p);
    }
  }
  return out;
}

ordered_json json_flows(const Graph& graph, const std::vector<double>& flow) {
  ordered_json out = ordered_json::array();
  for (ArcId id = 0; id < graph.arc_count(); ++id) {
    if (flow[id] <= 0.0) continue;
    out.push_back(ordered_json{{"from", graph.arc(id).start},
                               {"to", graph.arc(id).end},
                               {"flow", flow[id]}});
  }
  return out;
}

ordered_json json_augmentations(const std::vector<AugmentationStats>& stats) {
  ordered_json out = ordered_json::array();
  for (const AugmentationStats& a : stats) {
    out.push_back(ordered_json{{"epsilon", a.epsilon},
                               {"iterations", a.iterations},
                               {"steps", a.steps},
                               {"amount", a.amount},
                               {"path_length", a.path_length}});
  }
  return out;
}

void emit_trace(const CommonOptions& opt, const Trace& trace, int node_count) {
  if (opt.trace_file.empty()) return;
  const std::string jsonl = trace_to_jsonl(trace, node_count);
  if (opt.trace_file == "-") {
    std::cout << jsonl;
  } else {
    write_file(opt.trace_file, jsonl);
  }
}

void save_prices_if_asked(const CommonOptions& opt, const PriceVector& prices) {
  if (!opt.save_prices_file.empty()) write_file(opt.save_prices_file, format_prices(prices));
}

void print_path_result(const CommonOptions& opt, const std::string& command,
                       const Graph& graph, const RunResult& result,
                       const DiscrepancyReport* report) {
  if (opt.json) {
    ordered_json j;
    j["command"] = command;
    j["status"] = "ok";
    j["path"] = result.path;
    j["length"] = path_length(graph, result.path);
    j["iterations"] = result.iterations;
    j["steps"] = result.steps;
    j["extensions"] = result.extensions;
    j["contractions"] = result.contractions;
    j["prices"] = json_price_array(result.prices);
    if (report) {
      ordered_json arcs = ordered_json::array();
      for (ArcId id = 0; id < graph.arc_count(); ++id) {
        arcs.push_back(ordered_json{{"from", graph.arc(id).start},
                                    {"to", graph.arc(id).end},
                                    {"r", report->arc_discrepancy[id]}});
      }
      j["discrepancies"] = ordered_json{{"max", report->max_discrepancy},
                                        {"path_length", report->path_length},
                                        {"price_gap", report->price_gap},
                                        {"arcs", arcs}};
    }
    std::cout << j.dump() << '\n';
    return;
  }
  std::cout << "path:";
  for (NodeId v : result.path) std::cout << ' ' << v;
  std::cout << "\nlength: " << format_double(path_length(graph, result.path))
            << "\niterations: " << result.iterations << " (steps " << result.steps
            << ", extensions " << result.extensions << ", contractions "
            << result.contractions << ")\nprices:";
  for (double p : result.prices) std::cout << ' ' << format_double(p);
  std::cout << '\n';
  if (report) {
    std::cout << "max discrepancy: " << format_double(report->max_discrepancy)
              << "\nprice gap: " << format_double(report->price_gap) << '\n';
  }
}

int run_path(const CommonOptions& opt) {
  LoadedProblem loaded = load(opt);
  const bool trace = !opt.trace_file.empty();
  RunResult result = apc_run(loaded.parsed.graph, *loaded.parsed.source, *loaded.parsed.sink,
                             loaded.prices, to_config(opt, trace));
  emit_trace(opt, result.trace, loaded.parsed.graph.node_count());
  save_prices_if_asked(opt, result.prices);
  print_path_result(opt, "path", loaded.parsed.graph, result, nullptr);
  return 0;
}

int run_wpath(const CommonOptions& opt, const std::string& rule) {
  LoadedProblem loaded = load(opt);
  const bool trace = !opt.trace_file.empty();
  AwpcResult result = awpc_run(
      loaded.parsed.graph, *loaded.parsed.source, *loaded.parsed.sink, loaded.prices,
      to_config(opt, trace),
      rule == "cs" ? PriceRule::kCsPreserving : PriceRule::kStandard);
  emit_trace(opt, result.trace, loaded.parsed.graph.node_count());
  save_prices_if_asked(opt, result.prices);
  print_path_result(opt, "wpath", loaded.parsed.graph, result, &result.report);
  return 0;
}

int run_scale(const CommonOptions& opt, bool guaranteed) {
  LoadedProblem loaded = load(opt);
  const Graph& graph = loaded.parsed.graph;
  ScalingSchedule schedule = to_schedule(opt, graph);
  SolverConfig config = to_config(opt, false);
  ScaleResult result =
      guaranteed
          ? scale_run_guaranteed(graph, *loaded.parsed.source, *loaded.parsed.sink,
                                 loaded.prices, schedule, config)
          : scale_run_naive(graph, *loaded.parsed.source, *loaded.parsed.sink,
                            loaded.prices, schedule, config);
  save_prices_if_asked(opt, result.prices);
  if (opt.json) {
    ordered_json phases = ordered_json::array();
    for (const PhaseStats& p : result.phases) {
      phases.push_back(ordered_json{{"epsilon", p.epsilon},
                                    {"iterations", p.iterations},
                                    {"steps", p.steps},
                                    {"path_length", p.path_length}});
    }
    ordered_json j;
    j["command"] = "scale";
    j["status"] = "ok";
    j["guaranteed"] = guaranteed;
    j["path"] = result.path;
    j["length"] = path_length(graph, result.path);
    j["total_steps"] = result.total_steps;
    j["phases"] = phases;
    j["prices"] = json_price_array(result.prices);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "phases (epsilon, steps, path length):\n";
    for (const PhaseStats& p : result.phases) {
      std::cout << "  " << format_double(p.epsilon) << "  " << p.steps << "  "
                << format_double(p.path_length) << '\n';
    }
    std::cout << "path:";
    for (NodeId v : result.path) std::cout << ' ' << v;
    std::cout << "\nlength: " << format_double(path_length(graph, result.path))
              << "\ntotal steps: " << result.total_steps << '\n';
  }
  return 0;
}

double required_supply(const ParsedProblem& parsed) {
  if (!parsed.supply) {
    throw_error(ErrorCode::kInvalidArgument, "problem file does not carry a supply line");
  }
  return *parsed.supply;
}

void print_flow_result(const CommonOptions& opt, const std::string& command,
                       const Graph& graph, const FlowResult& result, bool with_cost) {
  if (opt.json) {
    ordered_json j;
    j["command"] = command;
    j["status"] = "ok";
    j["value"] = result.value;
    if (with_cost) j["objective"] = result.cost;
    j["flows"] = json_flows(graph, result.state.flow);
    j["augmentations"] = json_augmentations(result.augmentations);
    j["total_steps"] = result.total_steps;
    j["prices"] = json_price_array(result.state.prices);
    std::cout << j.dump() << '\n';
    return;
  }
  std::cout << "value: " << format_double(result.value) << '\n';
  if (with_cost) std::cout << "objective: " << format_double(result.cost) << '\n';
  std::cout << "augmentations: " << result.augmentations.size() << " (total steps "
            << result.total_steps << ")\nflows:\n";
  for (ArcId id = 0; id < graph.arc_count(); ++id) {
    if (result.state.flow[id] > 0.0) {
      std::cout << "  " << graph.arc(id).start << " -> " << graph.arc(id).end << ": "
                << format_double(result.state.flow[id]) << '\n';
    }
  }
}

AugmentEpsMode parse_mode(const std::string& mode) {
  if (mode == "shared") return AugmentEpsMode::kSharedSchedule;
  if (mode == "rescale-each") return AugmentEpsMode::kRescaleEach;
  return AugmentEpsMode::kFloorEps;
}

int run_flow(const CommonOptions& opt, const std::string& variant, const std::string& mode) {
  LoadedProblem loaded = load(opt);
  const Graph& graph = loaded.parsed.graph;
  SolverConfig config = to_config(opt, false);
  if (variant == "feasible") {
    FlowProblem problem(graph, *loaded.parsed.source, *loaded.parsed.sink,
                        required_supply(loaded.parsed));
    FlowResult result = solve_feasible_flow(problem, config, loaded.prices);
    save_prices_if_asked(opt, result.state.prices);
    print_flow_result(opt, "flow feasible", graph, result, false);
  } else if (variant == "max") {
    FlowProblem problem(graph, *loaded.parsed.source, *loaded.parsed.sink, 0.0);
    FlowResult result = solve_max_flow(problem, config, loaded.prices);
    save_prices_if_asked(opt, result.state.prices);
    print_flow_result(opt, "flow max", graph, result, false);
  } else {
    FlowProblem problem(graph, *loaded.parsed.source, *loaded.parsed.sink,
                        required_supply(loaded.parsed));
    FlowResult result = solve_min_cost_flow(problem, to_schedule(opt, graph), config,
                                            parse_mode(mode), loaded.prices);
    save_prices_if_asked(opt, result.state.prices);
    print_flow_result(opt, "flow mincost", graph, result, true);
  }
  return 0;
}

int run_assign(const CommonOptions& opt, const std::string& mode) {
  LoadedProblem loaded = load(opt);
  const Graph& graph = loaded.parsed.graph;
  const NodeId s = *loaded.parsed.source;
  const NodeId t = *loaded.parsed.sink;

  std::vector<NodeId> persons, objects;
  for (ArcId id : graph.out_arcs(s)) persons.push_back(graph.arc(id).end);
  for (ArcId id : graph.in_arcs(t)) objects.push_back(graph.arc(id).start);
  if (persons.size() != objects.size() || persons.empty()) {
    throw_error(ErrorCode::kInvalidArgument,
                "assignment requires equally many person and object nodes");
  }
  FlowProblem problem(graph, s, t, static_cast<double>(persons.size()));
  SolverConfig config = to_config(opt, false);
  FlowResult result =
      solve_min_cost_flow(problem, to_schedule(opt, graph), config, parse_mode(mode),
                          loaded.prices);
  save_prices_if_asked(opt, result.state.prices);

  std::vector<std::pair<NodeId, NodeId>> matching;
  double total_cost = 0.0;
  for (ArcId id = 0; id < graph.arc_count(); ++id) {
    const Arc& arc = graph.arc(id);
    if (arc.start == s || arc.end == t) continue;
    if (result.state.flow[id] > 0.5) {
      matching.emplace_back(arc.start, arc.end);
      total_cost += arc.length;
    }
  }
  std::sort(matching.begin(), matching.end());

  if (opt.json) {
    ordered_json pairs = ordered_json::array();
    for (const auto& [p, o] : matching) pairs.push_back(ordered_json::array({p, o}));
    ordered_json j;
    j["command"] = "assign";
    j["status"] = "ok";
    j["matching"] = pairs;
    j["objective"] = total_cost;
    j["augmentations"] = json_augmentations(result.augmentations);
    j["total_steps"] = result.total_steps;
    j["prices"] = json_price_array(result.state.prices);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "matching:\n";
    for (const auto& [p, o] : matching) std::cout << "  " << p << " -> " << o << '\n';
    std::cout << "objective: " << format_double(total_cost) << '\n';
  }
  return 0;
}

int run_oracle(const CommonOptions& opt, const std::string& variant) {
  LoadedProblem loaded = load(opt);
  const Graph& graph = loaded.parsed.graph;
  ordered_json j;
  j["command"] = "oracle " + variant;
  j["status"] = "ok";
  if (variant == "sp") {
    auto result = oracles::bellman_ford_distances(graph, *loaded.parsed.sink);
    if (result.has_negative_cycle) {
      throw_error(ErrorCode::kNegativeCycle, "graph has a negative cycle");
    }
    if (opt.json) {
      j["distances"] = json_price_array(result.distances);
      std::cout << j.dump() << '\n';
    } else {
      std::cout << "distances to sink:\n";
      for (NodeId v = 0; v < graph.node_count(); ++v) {
        std::cout << "  " << v << ": " << format_double(result.distances[v]) << '\n';
      }
    }
    return 0;
  }
  FlowProblem problem(graph, *loaded.parsed.source, *loaded.parsed.sink,
                      variant == "mincost" ? required_supply(loaded.parsed) : 0.0);
  auto result = variant == "mincost" ? oracles::oracle_min_cost_flow(problem)
                                     : oracles::oracle_max_flow(problem);
  if (opt.json) {
    j["value"] = result.value;
    if (variant == "mincost") j["objective"] = result.cost;
    j["flows"] = json_flows(graph, result.flow);
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "value: " << format_double(result.value) << '\n';
    if (variant == "mincost") std::cout << "objective: " << format_double(result.cost) << '\n';
  }
  return 0;
}

int exit_code_for(const SolverError& error) {
  switch (error.code()) {
    case ErrorCode::kUnreachable:
    case ErrorCode::kInfeasible:
      return 3;
    case ErrorCode::kIterationLimitExceeded:
      return 4;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"auction-based path construction and network transport solver"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string rule = "standard";
  std::string flow_variant;
  std::string oracle_variant;
  std::string eps_mode = "floor-eps";
  bool guaranteed = false;

  CLI::App* path = app.add_subcommand("path", "unweighted auction path construction");
  add_common(path, opt);

  CLI::App* wpath = app.add_subcommand("wpath", "weighted auction path construction");
  add_common(wpath, opt);
  wpath->add_option("--rule", rule, "price rise rule")
      ->check(CLI::IsMember({"standard", "cs"}));

  CLI::App* scale = app.add_subcommand("scale", "epsilon scaling driver");
  add_common(scale, opt, /*with_epsilon=*/false, /*with_schedule=*/true);
  scale->add_flag("--guaranteed", guaranteed,
                  "alternate CS-rule runs with acyclic price repair");

  CLI::App* flow = app.add_subcommand("flow", "path-based flow solvers");
  flow->add_option("variant", flow_variant, "feasible|max|mincost")
      ->required()
      ->check(CLI::IsMember({"feasible", "max", "mincost"}));
  add_common(flow, opt, /*with_epsilon=*/true, /*with_schedule=*/true);
  flow->add_option("--eps-mode", eps_mode, "epsilon policy per augmentation")
      ->check(CLI::IsMember({"floor-eps", "shared", "rescale-each"}));

  CLI::App* assign = app.add_subcommand("assign", "bipartite assignment");
  add_common(assign, opt, /*with_epsilon=*/true, /*with_schedule=*/true);
  assign->add_option("--eps-mode", eps_mode, "epsilon policy per augmentation")
      ->check(CLI::IsMember({"floor-eps", "shared", "rescale-each"}));

  CLI::App* oracle = app.add_subcommand("oracle", "reference solvers");
  oracle->add_option("variant", oracle_variant, "sp|maxflow|mincost")
      ->required()
      ->check(CLI::IsMember({"sp", "maxflow", "mincost"}));
  add_common(oracle, opt, /*with_epsilon=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (path->parsed()) return run_path(opt);
    if (wpath->parsed()) return run_wpath(opt, rule);
    if (scale->parsed()) return run_scale(opt, guaranteed);
    if (flow->parsed()) return run_flow(opt, flow_variant, eps_mode);
    if (assign->parsed()) return run_assign(opt, eps_mode);
    if (oracle->parsed()) return run_oracle(opt, oracle_variant);
  } catch (const SolverError& e) {
    const int code = exit_code_for(e);
    if (opt.json) {
      ordered_json j;
      j["status"] = "error";
      j["error"] = ordered_json{{"type", error_code_name(e.code())},
                                {"message", e.what()},
                                {"exit_code", code}};
      std::cout << j.dump() << '\n';
    } else {
      std::cerr << "error: " << e.what() << '\n';
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
