#include "pathauction/awpc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pathauction {

namespace {

// Value of arc (node, j) in the successor minimization.
double reach_cost(const Graph& graph, const PriceVector& prices, ArcId id) {
  const Arc& arc = graph.arc(id);
  if (std::isinf(prices[arc.end])) return kInfinity;
  return arc.length + prices[arc.end];
}

TraceRecord weighted_step(const Graph& graph, PathState& state, const SolverConfig& config,
                          PriceRule rule) {
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
    const NodeId succ = succ_arc(graph, state.prices, terminal, config.tie_break,
                                 config.tolerance);
    const ArcId out = *graph.find_arc(terminal, succ);
    state.prices[terminal] = std::max(
        state.prices[terminal], graph.arc(out).length + state.prices[succ] + config.epsilon);
    record.step_case = StepCase::kA;
    extend(succ);
  } else if (graph.is_deadend(terminal)) {
    state.prices[terminal] = kInfinity;
    record.step_case = StepCase::kB;
    contract();
  } else {
    const NodeId succ = succ_arc(graph, state.prices, terminal, config.tie_break,
                                 config.tolerance);
    const NodeId pred = state.pred_of_terminal();
    const double a_in = graph.arc(*graph.find_arc(pred, terminal)).length;
    const double a_out = graph.arc(*graph.find_arc(terminal, succ)).length;
    const double pred_price = state.prices[pred];
    const double via_succ = a_in + a_out + state.prices[succ];
    if (pred_price > via_succ + config.tolerance) {
      // (c1) extend; the standard rule levels the incoming arc, the CS rule
      // additionally caps the rise so no arc goes downhill by more than
      // epsilon.
      double rise = pred_price - a_in;
      if (rule == PriceRule::kCsPreserving) {
        rise = std::min(rise, a_out + state.prices[succ] + config.epsilon);
      }
      state.prices[terminal] = rise;
      record.step_case = StepCase::kC1;
      extend(succ);
    } else {
      // (c2) contract.
      state.prices[terminal] = a_out + state.prices[succ] + config.epsilon;
      record.step_case = StepCase::kC2;
      contract();
    }
  }
  ++state.steps;
  return record;
}

}  // namespace

NodeId succ_arc(const Graph& graph, const PriceVector& prices, NodeId node,
                TieBreak tie_break, double tolerance) {
  (void)tie_break;
  if (graph.is_deadend(node)) {
    throw_error(ErrorCode::kDeadendNode,
                "node " + std::to_string(node) + " has no downstream neighbors");
  }
  double best = kInfinity;
  for (ArcId id : graph.out_arcs(node)) {
    best = std::min(best, reach_cost(graph, prices, id));
  }
  NodeId pick = graph.node_count();
  for (ArcId id : graph.out_arcs(node)) {
    const NodeId end = graph.arc(id).end;
    if (reach_cost(graph, prices, id) <= best + tolerance && end < pick) pick = end;
  }
  return pick;
}

TraceRecord awpc_step(const Graph& graph, PathState& state, const SolverConfig& config) {
  return weighted_step(graph, state, config, PriceRule::kStandard);
}

TraceRecord awpc_step_cs(const Graph& graph, PathState& state, const SolverConfig& config) {
  return weighted_step(graph, state, config, PriceRule::kCsPreserving);
}

AwpcResult awpc_run(const Graph& graph, NodeId s, NodeId t, PriceVector initial_prices,
                    const SolverConfig& config, PriceRule rule) {
  if (config.epsilon <= 0.0) {
    throw_error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  PathState state = init_state(graph, s, t, std::move(initial_prices));
  if (!reachable(graph, s, t)) {
    throw_error(ErrorCode::kUnreachable,
                "no path from " + std::to_string(s) + " to " + std::to_string(t));
  }
  if (!config.skip_cycle_check) {
    CycleCheck cycles = check_nonnegative_cycles(graph);
    if (!cycles.ok) {
      throw_error(ErrorCode::kNegativeCycle,
                  "graph has a negative cycle of length " + std::to_string(cycles.length));
    }
  }
  if (rule == PriceRule::kCsPreserving) {
    EcsReport entry = check_epsilon_cs(graph, state.prices, {}, config.epsilon);
    if (!entry.ok) {
      throw_error(ErrorCode::kEcsViolatedOnEntry,
                  "initial prices violate the all-arcs epsilon-CS condition on " +
                      std::to_string(entry.violations.size()) + " arc(s)");
    }
  }

  const std::int64_t limit =
      config.iteration_limit > 0 ? config.iteration_limit : default_iteration_limit(graph);
  AwpcResult result;
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
    TraceRecord record = weighted_step(graph, state, config, rule);
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
  result.report = discrepancies(graph, result.prices, result.path);
  return result;
}

DiscrepancyReport discrepancies(const Graph& graph, const PriceVector& prices) {
  DiscrepancyReport report;
  report.arc_discrepancy.resize(graph.arc_count(), 0.0);
  for (ArcId id = 0; id < graph.arc_count(); ++id) {
    const Arc& arc = graph.arc(id);
    double r = 0.0;
    if (std::isinf(prices[arc.end])) {
      r = 0.0;  // infinitely uphill
    } else if (std::isinf(prices[arc.start])) {
      r = kInfinity;
    } else {
      r = std::max(0.0, prices[arc.start] - arc.length - prices[arc.end]);
    }
    report.arc_discrepancy[id] = r;
    report.max_discrepancy = std::max(report.max_discrepancy, r);
  }
  return report;
}

DiscrepancyReport discrepancies(const Graph& graph, const PriceVector& prices,
                                const Path& path) {
  DiscrepancyReport report = discrepancies(graph, prices);
  if (!path.empty()) {
    report.has_path = true;
    report.path_length = path_length(graph, path);
    report.price_gap = prices[path.front()] - prices[path.back()];
  }
  return report;
}

SuboptimalityBound suboptimality_bound(const Graph& graph, const DiscrepancyReport& report,
                                       const PriceVector& prices, const Path& run_path,
                                       const Path& reference_path) {
  for (std::size_t i = 0; i + 1 < run_path.size(); ++i) {
    auto arc = graph.find_arc(run_path[i], run_path[i + 1]);
    if (!arc) {
      throw_error(ErrorCode::kInvalidArgument, "run path uses a missing arc");
    }
    if (classify_arc(graph.arc(*arc), prices) == ArcClass::kUphill) {
      throw_error(ErrorCode::kUphillArcOnPath,
                  "arc (" + std::to_string(run_path[i]) + "," +
                      std::to_string(run_path[i + 1]) + ") of the run path is uphill");
    }
  }
  SuboptimalityBound bound;
  bound.reference_length = path_length(graph, reference_path);
  double discrepancy_sum = 0.0;
  for (std::size_t i = 0; i + 1 < reference_path.size(); ++i) {
    auto arc = graph.find_arc(reference_path[i], reference_path[i + 1]);
    if (!arc) {
      throw_error(ErrorCode::kInvalidArgument, "reference path uses a missing arc");
    }
    discrepancy_sum += report.arc_discrepancy[*arc];
  }
  bound.tight = bound.reference_length + discrepancy_sum;
  const int interior = graph.node_count() - 2;
  bound.coarse = bound.reference_length + (interior + 1) * report.max_discrepancy;
  return bound;
}

EcsReport check_epsilon_cs(const Graph& graph, const PriceVector& prices, const Path& path,
                           double epsilon) {
  EcsReport report;
  for (ArcId id = 0; id < graph.arc_count(); ++id) {
    const Arc& arc = graph.arc(id);
    const double p_start = prices[arc.start];
    const double p_end = prices[arc.end];
    if (std::isinf(p_end)) continue;  // uphill, always fine
    double slack;
    if (std::isinf(p_start)) {
      slack = kInfinity;
    } else {
      slack = p_start - (arc.length + p_end + epsilon);
    }
    if (slack > 0.0) {
      report.ok = false;
      report.violations.push_back(EcsViolation{id, slack, false});
    }
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto arc_id = graph.find_arc(path[i], path[i + 1]);
    if (!arc_id) {
      throw_error(ErrorCode::kInvalidArgument, "path uses a missing arc");
    }
    const Arc& arc = graph.arc(*arc_id);
    const double p_start = prices[arc.start];
    const double p_end = prices[arc.end];
    if (std::isinf(p_start)) continue;  // downhill over any finite end
    const double deficit =
        std::isinf(p_end) ? kInfinity : (arc.length + p_end) - p_start;
    if (deficit > 0.0) {
      report.ok = false;
      report.violations.push_back(EcsViolation{*arc_id, deficit, true});
    }
  }
  return report;
}

}  // namespace pathauction
