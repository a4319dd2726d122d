#include "pathauction/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace pathauction {

void ScalingSchedule::validate() const {
  if (!(eps_min > 0.0) || !(eps0 >= eps_min)) {
    throw_error(ErrorCode::kInvalidArgument, "schedule requires eps0 >= eps_min > 0");
  }
  if (!(theta > 0.0) || !(theta < 1.0)) {
    throw_error(ErrorCode::kInvalidArgument, "schedule requires theta in (0,1)");
  }
}

ScalingSchedule default_schedule(const Graph& graph, double eps_min) {
  double max_length = 0.0;
  for (const Arc& arc : graph.arcs()) max_length = std::max(max_length, arc.length);
  ScalingSchedule schedule;
  schedule.eps0 = std::max(max_length, 1.0);
  schedule.theta = 0.25;
  schedule.eps_min = std::min(eps_min, schedule.eps0);
  return schedule;
}

namespace {

void accumulate_phase(ScaleResult& result, const Graph& graph, const AwpcResult& run,
                      double eps) {
  PhaseStats stats;
  stats.epsilon = eps;
  stats.iterations = run.iterations;
  stats.steps = run.steps;
  stats.path_length = path_length(graph, run.path);
  result.phases.push_back(stats);
  result.total_steps += run.steps;
  result.total_iterations += run.iterations;
}

}  // namespace

ScaleResult scale_run_naive(const Graph& graph, NodeId s, NodeId t, PriceVector initial_prices,
                            const ScalingSchedule& schedule, const SolverConfig& config,
                            PriceRule rule) {
  schedule.validate();
  ScaleResult result;
  PriceVector prices = std::move(initial_prices);
  double eps = schedule.eps0;
  while (true) {
    SolverConfig phase_config = config;
    phase_config.epsilon = eps;
    AwpcResult run = awpc_run(graph, s, t, std::move(prices), phase_config, rule);
    accumulate_phase(result, graph, run, eps);
    prices = std::move(run.prices);
    result.path = std::move(run.path);
    if (eps <= schedule.eps_min) break;
    eps = std::max(eps * schedule.theta, schedule.eps_min);
  }
  result.prices = std::move(prices);
  return result;
}

PriceVector repair_prices_acyclic(const Graph& graph, const PriceVector& prices,
                                  double eps_prime) {
  if (!(eps_prime > 0.0)) {
    throw_error(ErrorCode::kInvalidArgument, "eps_prime must be positive");
  }
  if (static_cast<int>(prices.size()) != graph.node_count()) {
    throw_error(ErrorCode::kInvalidArgument, "price vector size does not match node count");
  }
  auto topo = topological_order(graph);
  if (!topo) {
    throw_error(ErrorCode::kCyclicGraph, "price repair requires an acyclic graph");
  }
  for (const Arc& arc : graph.arcs()) {
    if (std::isinf(prices[arc.start]) && !std::isinf(prices[arc.end])) {
      throw_error(ErrorCode::kNotEntryFeasible,
                  "arc (" + std::to_string(arc.start) + "," + std::to_string(arc.end) +
                      ") is downhill by an infinite amount");
    }
  }

  PriceVector repaired = prices;
  auto violated = [&](const Arc& arc) {
    if (std::isinf(repaired[arc.end])) return false;
    return repaired[arc.start] > arc.length + repaired[arc.end] + eps_prime;
  };
  // Minimum raise that clears arc (i,j) under the same floating arithmetic
  // the epsilon-CS check uses; p_i - a - eps' alone can land one ulp short.
  auto clearing_price = [&](const Arc& arc) {
    double x = repaired[arc.start] - arc.length - eps_prime;
    while (repaired[arc.start] > arc.length + x + eps_prime) {
      x = std::nextafter(x, kInfinity);
    }
    return x;
  };

  // Work queue of end nodes needing a raise, seeded in reverse topological
  // order; a raise re-enqueues downstream nodes it newly pushes over.
  std::vector<int> topo_pos(graph.node_count());
  for (int i = 0; i < graph.node_count(); ++i) topo_pos[(*topo)[i]] = i;
  std::vector<NodeId> seed;
  for (NodeId v : *topo) {
    for (ArcId id : graph.in_arcs(v)) {
      if (violated(graph.arc(id))) {
        seed.push_back(v);
        break;
      }
    }
  }
  std::reverse(seed.begin(), seed.end());

  std::deque<NodeId> queue(seed.begin(), seed.end());
  std::vector<char> queued(graph.node_count(), 0);
  for (NodeId v : queue) queued[v] = 1;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    queued[v] = 0;
    double needed = repaired[v];
    for (ArcId id : graph.in_arcs(v)) {
      const Arc& arc = graph.arc(id);
      if (std::isinf(repaired[arc.start])) continue;  // rejected above
      if (violated(arc)) needed = std::max(needed, clearing_price(arc));
    }
    if (needed > repaired[v]) {
      repaired[v] = needed;
      for (ArcId id : graph.out_arcs(v)) {
        const Arc& arc = graph.arc(id);
        if (violated(arc) && !queued[arc.end]) {
          queued[arc.end] = 1;
          queue.push_back(arc.end);
        }
      }
    }
  }
  return repaired;
}

ScaleResult scale_run_guaranteed(const Graph& graph, NodeId s, NodeId t,
                                 PriceVector initial_prices, const ScalingSchedule& schedule,
                                 const SolverConfig& config) {
  schedule.validate();
  if (!is_acyclic(graph)) {
    throw_error(ErrorCode::kCyclicGraph, "guaranteed scaling requires an acyclic graph");
  }
  ScaleResult result;
  PriceVector prices = std::move(initial_prices);
  if (prices.empty()) prices.assign(graph.node_count(), 0.0);
  double eps = schedule.eps0;
  while (true) {
    SolverConfig phase_config = config;
    phase_config.epsilon = eps;
    AwpcResult run =
        awpc_run(graph, s, t, std::move(prices), phase_config, PriceRule::kCsPreserving);
    accumulate_phase(result, graph, run, eps);
    result.path = std::move(run.path);
    if (eps <= schedule.eps_min) {
      prices = std::move(run.prices);
      break;
    }
    const double next_eps = std::max(eps * schedule.theta, schedule.eps_min);
    prices = repair_prices_acyclic(graph, run.prices, next_eps);
    eps = next_eps;
  }
  result.prices = std::move(prices);
  return result;
}

}  // namespace pathauction
