#include "pathauction/multipath.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace pathauction {

namespace {

TraceRecord engine_step(const Graph& graph, PathState& state, const SolverConfig& config,
                        EngineKind engine, PriceRule rule) {
  if (engine == EngineKind::kApc) return apc_step(graph, state, config);
  return rule == PriceRule::kCsPreserving ? awpc_step_cs(graph, state, config)
                                          : awpc_step(graph, state, config);
}

void engine_prechecks(const Graph& graph, const PriceVector& prices,
                      const SolverConfig& config, EngineKind engine, PriceRule rule) {
  if (engine != EngineKind::kAwpc) return;
  if (!config.skip_cycle_check) {
    CycleCheck cycles = check_nonnegative_cycles(graph);
    if (!cycles.ok) {
      throw_error(ErrorCode::kNegativeCycle, "graph has a negative cycle");
    }
  }
  if (rule == PriceRule::kCsPreserving && !prices.empty()) {
    EcsReport entry = check_epsilon_cs(graph, prices, {}, config.epsilon);
    if (!entry.ok) {
      throw_error(ErrorCode::kEcsViolatedOnEntry,
                  "initial prices violate the all-arcs epsilon-CS condition");
    }
  }
}

}  // namespace

MultiDestinationResult run_multi_destination(const Graph& graph, NodeId s,
                                             const std::vector<NodeId>& destinations,
                                             PriceVector initial_prices,
                                             const SolverConfig& config, EngineKind engine,
                                             PriceRule rule) {
  if (destinations.empty()) {
    throw_error(ErrorCode::kInvalidArgument, "destination list is empty");
  }
  for (NodeId d : destinations) {
    if (!reachable(graph, s, d)) {
      throw_error(ErrorCode::kUnreachable, "destination " + std::to_string(d) +
                                               " is unreachable from " + std::to_string(s));
    }
  }
  std::set<NodeId> remaining(destinations.begin(), destinations.end());

  MultiDestinationResult result;
  if (remaining.erase(s) > 0) result.paths.emplace(s, Path{s});
  if (remaining.empty()) {
    result.prices = initial_prices.empty()
                        ? PriceVector(graph.node_count(), 0.0)
                        : std::move(initial_prices);
    return result;
  }
  engine_prechecks(graph, initial_prices, config, engine, rule);
  PathState state = init_state(graph, s, *remaining.begin(), std::move(initial_prices));
  const std::int64_t limit =
      config.iteration_limit > 0 ? config.iteration_limit : default_iteration_limit(graph);

  while (!remaining.empty()) {
    const NodeId terminal = state.terminal();
    if (auto it = remaining.find(terminal); it != remaining.end()) {
      result.paths.emplace(terminal, state.path);
      remaining.erase(it);
      if (remaining.empty()) break;
      // Restart from the degenerate path; prices persist.
      PriceVector prices = std::move(state.prices);
      state = init_state(graph, s, *remaining.begin(), std::move(prices));
      state.steps = result.total_steps;
      continue;
    }
    if (state.steps >= limit) {
      throw_error(ErrorCode::kIterationLimitExceeded, "multi-destination step limit exceeded");
    }
    state.destination = *remaining.begin();
    engine_step(graph, state, config, engine, rule);
    result.total_steps = state.steps;
  }
  result.prices = std::move(state.prices);
  return result;
}

std::optional<Path> try_splice(const Path& current, const Path& host, NodeId junction) {
  auto at = std::find(host.begin(), host.end(), junction);
  if (at == host.end()) return std::nullopt;
  std::set<NodeId> on_current(current.begin(), current.end());
  for (auto it = at + 1; it != host.end(); ++it) {
    if (on_current.count(*it)) return std::nullopt;  // tail would repeat a node
  }
  Path composite = current;
  composite.insert(composite.end(), at + 1, host.end());
  return composite;
}

PathTree run_multi_origin_tree(const Graph& graph, const std::vector<NodeId>& origins,
                               NodeId t, PriceVector initial_prices,
                               const SolverConfig& config, EngineKind engine, PriceRule rule) {
  if (origins.empty()) {
    throw_error(ErrorCode::kInvalidArgument, "origin list is empty");
  }
  for (NodeId o : origins) {
    if (!reachable(graph, o, t)) {
      throw_error(ErrorCode::kUnreachable,
                  "destination unreachable from origin " + std::to_string(o));
    }
  }

  PathTree tree;
  tree.destination = t;
  PriceVector prices = std::move(initial_prices);
  if (prices.empty()) prices.assign(graph.node_count(), 0.0);
  engine_prechecks(graph, prices, config, engine, rule);

  // node -> origin of the first completed path through it
  std::vector<NodeId> owner(graph.node_count(), -1);
  auto register_path = [&](NodeId origin, const Path& path) {
    for (NodeId v : path) {
      if (v != t && owner[v] == -1) owner[v] = origin;
    }
  };

  const std::int64_t limit =
      config.iteration_limit > 0 ? config.iteration_limit : default_iteration_limit(graph);

  for (NodeId origin : origins) {
    if (tree.paths.count(origin)) continue;
    PathState state = init_state(graph, origin, t, std::move(prices));
    Path completed;
    while (true) {
      if (state.terminated()) {
        completed = state.path;
        break;
      }
      if (state.steps >= limit) {
        throw_error(ErrorCode::kIterationLimitExceeded, "multi-origin step limit exceeded");
      }
      TraceRecord record = engine_step(graph, state, config, engine, rule);
      tree.total_steps += 1;
      if (record.action != ActionKind::kExtension) continue;
      const NodeId landed = record.node;
      if (landed == t || owner[landed] == -1 || owner[landed] == origin) continue;
      auto spliced = try_splice(state.path, tree.paths.at(owner[landed]), landed);
      if (spliced) {
        completed = std::move(*spliced);
        tree.junctions.push_back(Junction{origin, landed, owner[landed]});
        break;
      }
      // Tail overlaps the path built so far; keep iterating.
    }
    prices = std::move(state.prices);
    tree.paths.emplace(origin, completed);
    register_path(origin, completed);
  }
  tree.prices = std::move(prices);
  return tree;
}

}  // namespace pathauction
