#include "pathauction/apc.hpp"

#include <cmath>
#include <string>

namespace pathauction {

namespace {

void validate_prices(const Graph& graph, const PriceVector& prices) {
  if (static_cast<int>(prices.size()) != graph.node_count()) {
    throw_error(ErrorCode::kInvalidArgument, "price vector size does not match node count");
  }
  for (double p : prices) {
    if (std::isnan(p) || p == -kInfinity) {
      throw_error(ErrorCode::kInvalidArgument, "prices must be finite or +inf");
    }
  }
}

}  // namespace

std::int64_t default_iteration_limit(const Graph& graph) {
  const std::int64_t n = graph.node_count();
  const std::int64_t m = graph.arc_count();
  return 50 * n * (n + m);
}

double path_length(const Graph& graph, const Path& path) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto arc = graph.find_arc(path[i], path[i + 1]);
    if (!arc) {
      throw_error(ErrorCode::kInvalidArgument,
                  "path uses missing arc (" + std::to_string(path[i]) + "," +
                      std::to_string(path[i + 1]) + ")");
    }
    total += graph.arc(*arc).length;
  }
  return total;
}

bool is_valid_path(const Graph& graph, const Path& path) {
  if (path.empty()) return false;
  std::vector<char> seen(graph.node_count(), 0);
  for (NodeId v : path) {
    if (!graph.valid_node(v) || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!graph.find_arc(path[i], path[i + 1])) return false;
  }
  return true;
}

PathState init_state(const Graph& graph, NodeId s, NodeId t, PriceVector prices) {
  if (!graph.valid_node(s) || !graph.valid_node(t)) {
    throw_error(ErrorCode::kNodeOutOfRange, "origin or destination out of range");
  }
  if (s == t) {
    throw_error(ErrorCode::kInvalidArgument, "origin equals destination");
  }
  if (prices.empty()) prices.assign(graph.node_count(), 0.0);
  validate_prices(graph, prices);
  PathState state;
  state.path = {s};
  state.on_path.assign(graph.node_count(), 0);
  state.on_path[s] = 1;
  state.prices = std::move(prices);
  state.destination = t;
  return state;
}

NodeId succ_node(const Graph& graph, const PriceVector& prices, NodeId node,
                 TieBreak tie_break, double tolerance) {
  (void)tie_break;  // kMinId is the only rule
  if (graph.is_deadend(node)) {
    throw_error(ErrorCode::kDeadendNode,
                "node " + std::to_string(node) + " has no downstream neighbors");
  }
  double best = kInfinity;
  for (ArcId id : graph.out_arcs(node)) {
    best = std::min(best, prices[graph.arc(id).end]);
  }
  NodeId pick = graph.node_count();
  for (ArcId id : graph.out_arcs(node)) {
    NodeId end = graph.arc(id).end;
    if (prices[end] <= best + tolerance && end < pick) pick = end;
  }
  return pick;
}

TraceRecord apc_step(const Graph& graph, PathState& state, const SolverConfig& config) {
  if (state.terminated()) {
    throw_error(ErrorCode::kAlreadyTerminated, "destination is already terminal");
  }
  TraceRecord record;
  record.path_prior = state.path;
  record.prices_prior = state.prices;

  const NodeId terminal = state.terminal();
  auto extend = [&](NodeId target) {
    if (state.on_path[target]) {
      throw_error(ErrorCode::kCycleCreated,
                  "extension to node " + std::to_string(target) + " already on path");
    }
    state.path.push_back(target);
    state.on_path[target] = 1;
    state.last_action = LastAction::kExtension;
    record.action = ActionKind::kExtension;
    record.node = target;
  };
  auto contract = [&]() {
    state.on_path[terminal] = 0;
    state.path.pop_back();
    state.last_action = LastAction::kContraction;
    record.action = ActionKind::kContraction;
    record.node = state.path.back();
  };

  if (state.degenerate()) {
    // (a) degenerate path: raise p_s as needed and extend.
    const NodeId succ = succ_node(graph, state.prices, terminal, config.tie_break,
                                  config.tolerance);
    state.prices[terminal] =
        std::max(state.prices[terminal], state.prices[succ] + config.epsilon);
    record.step_case = StepCase::kA;
    extend(succ);
  } else if (graph.is_deadend(terminal)) {
    // (b) deadend terminal: price to +inf so it is never chosen again.
    state.prices[terminal] = kInfinity;
    record.step_case = StepCase::kB;
    contract();
  } else {
    const NodeId succ = succ_node(graph, state.prices, terminal, config.tie_break,
                                  config.tolerance);
    const double pred_price = state.prices[state.pred_of_terminal()];
    const double succ_price = state.prices[succ];
    if (pred_price > succ_price + config.tolerance) {
      // (c1) extend; the terminal's price climbs to its predecessor's.
      state.prices[terminal] = pred_price;
      record.step_case = StepCase::kC1;
      extend(succ);
    } else {
      // (c2) contract; the terminal is repriced just above its best exit.
      state.prices[terminal] = succ_price + config.epsilon;
      record.step_case = StepCase::kC2;
      contract();
    }
  }
  ++state.steps;
  return record;
}

RunResult apc_run(const Graph& graph, NodeId s, NodeId t, PriceVector initial_prices,
                  const SolverConfig& config) {
  if (config.epsilon <= 0.0) {
    throw_error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  PathState state = init_state(graph, s, t, std::move(initial_prices));
  if (!reachable(graph, s, t)) {
    throw_error(ErrorCode::kUnreachable,
                "no path from " + std::to_string(s) + " to " + std::to_string(t));
  }

  const std::int64_t limit =
      config.iteration_limit > 0 ? config.iteration_limit : default_iteration_limit(graph);
  RunResult result;
  std::int64_t iteration = 0;
  while (true) {
    ++iteration;
    if (state.terminated()) {
      if (config.trace) {
        TraceRecord record;
        record.iteration = iteration;
        record.path_prior = state.path;
        record.prices_prior = state.prices;
        result.trace.push_back(std::move(record));
      }
      break;
    }
    if (state.steps >= limit) {
      throw_error(ErrorCode::kIterationLimitExceeded,
                  "step limit " + std::to_string(limit) + " exceeded");
    }
    TraceRecord record = apc_step(graph, state, config);
    record.iteration = iteration;
    if (record.action == ActionKind::kExtension) {
      ++result.extensions;
    } else {
      ++result.contractions;
    }
    if (config.trace) result.trace.push_back(std::move(record));
  }

  result.path = std::move(state.path);
  result.prices = std::move(state.prices);
  result.steps = state.steps;
  result.iterations = iteration;
  return result;
}

}  // namespace pathauction
