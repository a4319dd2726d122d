#include "pathauction/transport.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pathauction {

FlowProblem::FlowProblem(Graph g, NodeId s, NodeId t, double r)
    : graph(std::move(g)), source(s), sink(t), supply(r) {
  if (!graph.valid_node(s) || !graph.valid_node(t)) {
    throw_error(ErrorCode::kNodeOutOfRange, "source or sink out of range");
  }
  if (s == t) {
    throw_error(ErrorCode::kInvalidArgument, "source equals sink");
  }
  if (!graph.in_arcs(s).empty()) {
    throw_error(ErrorCode::kInvalidArgument, "source must have no incoming arcs");
  }
  if (!graph.out_arcs(t).empty()) {
    throw_error(ErrorCode::kInvalidArgument, "sink must have no outgoing arcs");
  }
  if (std::isnan(r) || r < 0.0) {
    throw_error(ErrorCode::kInvalidArgument, "supply must be nonnegative");
  }
}

bool flow_state_valid(const FlowProblem& problem, const FlowState& state, double tolerance) {
  const Graph& g = problem.graph;
  if (static_cast<int>(state.flow.size()) != g.arc_count()) return false;
  std::vector<double> divergence(g.node_count(), 0.0);
  for (ArcId id = 0; id < g.arc_count(); ++id) {
    const Arc& arc = g.arc(id);
    const double x = state.flow[id];
    if (x < -tolerance || x > arc.capacity + tolerance) return false;
    divergence[arc.start] += x;
    divergence[arc.end] -= x;
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == problem.source || v == problem.sink) continue;
    if (std::abs(divergence[v]) > tolerance) return false;
  }
  return std::abs(divergence[problem.source] - state.routed) <= tolerance &&
         std::abs(divergence[problem.sink] + state.routed) <= tolerance;
}

double path_residual_capacity(const ResidualGraph& residual, const Path& path) {
  double bottleneck = kInfinity;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto id = residual.graph.find_arc(path[i], path[i + 1]);
    if (!id) {
      throw_error(ErrorCode::kInvalidArgument,
                  "path uses arc (" + std::to_string(path[i]) + "," +
                      std::to_string(path[i + 1]) + ") missing from the residual graph");
    }
    bottleneck = std::min(bottleneck, residual.graph.arc(*id).capacity);
  }
  return bottleneck;
}

void augment(const ResidualGraph& residual, std::vector<double>& flow, const Path& path,
             double amount) {
  if (!(amount > 0.0)) {
    throw_error(ErrorCode::kInvalidArgument, "augmentation amount must be positive");
  }
  const double bottleneck = path_residual_capacity(residual, path);
  if (amount > bottleneck) {
    throw_error(ErrorCode::kAmountExceedsResidual,
                "amount " + std::to_string(amount) + " exceeds residual capacity " +
                    std::to_string(bottleneck));
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const ArcId id = *residual.graph.find_arc(path[i], path[i + 1]);
    const ResidualArcInfo& info = residual.info[id];
    if (info.reversed) {
      flow[info.original_arc] -= amount;
    } else {
      flow[info.original_arc] += amount;
    }
  }
}

namespace {

struct AugmentingLoop {
  const FlowProblem& problem;
  FlowResult result;
  PriceVector prices;

  AugmentingLoop(const FlowProblem& p, PriceVector initial)
      : problem(p), prices(std::move(initial)) {
    if (prices.empty()) prices.assign(p.graph.node_count(), 0.0);
    result.state.flow.assign(p.graph.arc_count(), 0.0);
  }

  void finish() {
    result.state.routed = result.value;
    result.state.prices = std::move(prices);
    result.cost = 0.0;
    for (ArcId id = 0; id < problem.graph.arc_count(); ++id) {
      result.cost += result.state.flow[id] * problem.graph.arc(id).length;
    }
  }
};

}  // namespace

FlowResult solve_feasible_flow(const FlowProblem& problem, const SolverConfig& config,
                               PriceVector initial_prices) {
  AugmentingLoop loop(problem, std::move(initial_prices));
  double remaining = problem.supply;
  while (remaining > 0.0) {
    ResidualGraph residual = residual_graph(problem.graph, loop.result.state.flow);
    if (!reachable(residual.graph, problem.source, problem.sink)) {
      throw_error(ErrorCode::kInfeasible,
                  "sink unreachable with " + std::to_string(remaining) +
                      " of " + std::to_string(problem.supply) + " units still to route");
    }
    RunResult run =
        apc_run(residual.graph, problem.source, problem.sink, std::move(loop.prices), config);
    const double amount = std::min(path_residual_capacity(residual, run.path), remaining);
    augment(residual, loop.result.state.flow, run.path, amount);
    loop.prices = std::move(run.prices);
    remaining -= amount;
    loop.result.value += amount;
    loop.result.total_steps += run.steps;
    loop.result.augmentations.push_back(AugmentationStats{
        config.epsilon, run.iterations, run.steps, amount,
        path_length(residual.graph, run.path)});
  }
  loop.finish();
  return loop.result;
}

FlowResult solve_max_flow(const FlowProblem& problem, const SolverConfig& config,
                          PriceVector initial_prices) {
  AugmentingLoop loop(problem, std::move(initial_prices));
  while (true) {
    ResidualGraph residual = residual_graph(problem.graph, loop.result.state.flow);
    if (!reachable(residual.graph, problem.source, problem.sink)) break;
    RunResult run =
        apc_run(residual.graph, problem.source, problem.sink, std::move(loop.prices), config);
    const double amount = path_residual_capacity(residual, run.path);
    augment(residual, loop.result.state.flow, run.path, amount);
    loop.prices = std::move(run.prices);
    loop.result.value += amount;
    loop.result.total_steps += run.steps;
    loop.result.augmentations.push_back(AugmentationStats{
        config.epsilon, run.iterations, run.steps, amount,
        path_length(residual.graph, run.path)});
  }
  loop.finish();
  return loop.result;
}

FlowResult solve_min_cost_flow(const FlowProblem& problem, const ScalingSchedule& schedule,
                               const SolverConfig& config, AugmentEpsMode mode,
                               PriceVector initial_prices) {
  schedule.validate();
  for (const Arc& arc : problem.graph.arcs()) {
    if (arc.length < 0.0) {
      throw_error(ErrorCode::kInvalidArgument,
                  "min-cost transport requires nonnegative arc costs");
    }
  }
  AugmentingLoop loop(problem, std::move(initial_prices));
  double remaining = problem.supply;
  double shared_eps = schedule.eps0;
  while (remaining > 0.0) {
    ResidualGraph residual = residual_graph(problem.graph, loop.result.state.flow);
    if (!reachable(residual.graph, problem.source, problem.sink)) {
      throw_error(ErrorCode::kInfeasible,
                  "sink unreachable with " + std::to_string(remaining) +
                      " units still to route");
    }

    Path path;
    std::int64_t iterations = 0;
    std::int64_t steps = 0;
    double used_eps = 0.0;
    if (mode == AugmentEpsMode::kRescaleEach) {
      ScaleResult run = scale_run_naive(residual.graph, problem.source, problem.sink,
                                        std::move(loop.prices), schedule, config,
                                        PriceRule::kStandard);
      path = std::move(run.path);
      loop.prices = std::move(run.prices);
      iterations = run.total_iterations;
      steps = run.total_steps;
      used_eps = schedule.eps_min;
    } else {
      SolverConfig run_config = config;
      PriceRule rule = PriceRule::kStandard;
      if (mode == AugmentEpsMode::kFloorEps) {
        // Constant small epsilon with the CS rule: the final prices of each
        // augmentation satisfy epsilon-CS on the next residual graph, so the
        // per-augmentation (n+1)*eps bound survives the whole loop.
        run_config.epsilon = schedule.eps_min;
        rule = PriceRule::kCsPreserving;
      } else {
        run_config.epsilon = shared_eps;
        shared_eps = std::max(shared_eps * schedule.theta, schedule.eps_min);
      }
      AwpcResult run = awpc_run(residual.graph, problem.source, problem.sink,
                                std::move(loop.prices), run_config, rule);
      path = std::move(run.path);
      loop.prices = std::move(run.prices);
      iterations = run.iterations;
      steps = run.steps;
      used_eps = run_config.epsilon;
    }

    const double amount = std::min(path_residual_capacity(residual, path), remaining);
    augment(residual, loop.result.state.flow, path, amount);
    remaining -= amount;
    loop.result.value += amount;
    loop.result.total_steps += steps;
    loop.result.augmentations.push_back(AugmentationStats{
        used_eps, iterations, steps, amount, path_length(residual.graph, path)});
  }
  loop.finish();
  return loop.result;
}

MatchingFlow matching_to_flow(int left_size, int right_size,
                              const std::vector<std::pair<int, int>>& allowed_pairs,
                              const std::vector<double>& pair_costs) {
  if (left_size < 1 || right_size < 1) {
    throw_error(ErrorCode::kInvalidArgument, "matching sides must be nonempty");
  }
  if (!pair_costs.empty() && pair_costs.size() != allowed_pairs.size()) {
    throw_error(ErrorCode::kInvalidArgument, "pair cost list does not match pair list");
  }
  const int node_count = left_size + right_size + 2;
  const NodeId source = 0;
  const NodeId sink = node_count - 1;
  std::vector<Arc> arcs;
  arcs.reserve(left_size + right_size + allowed_pairs.size());
  for (int p = 0; p < left_size; ++p) {
    arcs.push_back(Arc{source, 1 + p, 0.0, 1.0});
  }
  for (std::size_t k = 0; k < allowed_pairs.size(); ++k) {
    const auto& [p, o] = allowed_pairs[k];
    if (p < 0 || p >= left_size || o < 0 || o >= right_size) {
      throw_error(ErrorCode::kNodeOutOfRange, "pair (" + std::to_string(p) + "," +
                                                  std::to_string(o) + ") out of range");
    }
    const double cost = pair_costs.empty() ? 0.0 : pair_costs[k];
    arcs.push_back(Arc{1 + p, 1 + left_size + o, cost, 1.0});
  }
  for (int o = 0; o < right_size; ++o) {
    arcs.push_back(Arc{1 + left_size + o, sink, 0.0, 1.0});
  }
  Graph graph = build_graph(node_count, arcs);
  const double supply = std::min(left_size, right_size);
  MatchingFlow instance{FlowProblem(std::move(graph), source, sink, supply), left_size,
                        right_size};
  return instance;
}

AssignmentResult solve_assignment(const MatchingFlow& instance, const ScalingSchedule& schedule,
                                  const SolverConfig& config, AugmentEpsMode mode) {
  if (instance.left_size != instance.right_size) {
    throw_error(ErrorCode::kInvalidArgument, "assignment requires a square problem");
  }
  AssignmentResult result;
  result.flow = solve_min_cost_flow(instance.problem, schedule, config, mode);

  const Graph& g = instance.problem.graph;
  for (ArcId id = 0; id < g.arc_count(); ++id) {
    const Arc& arc = g.arc(id);
    if (arc.start == instance.source() || arc.end == instance.sink()) continue;
    if (result.flow.state.flow[id] > 0.5) {
      result.matching.emplace_back(instance.person_of(arc.start), instance.object_of(arc.end));
      result.total_cost += arc.length;
    }
  }
  std::sort(result.matching.begin(), result.matching.end());
  return result;
}

}  // namespace pathauction
