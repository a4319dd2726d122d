#ifndef PATHAUCTION_AWPC_HPP
#define PATHAUCTION_AWPC_HPP

#include <vector>

#include "pathauction/apc.hpp"
#include "pathauction/config.hpp"
#include "pathauction/graph.hpp"
#include "pathauction/trace.hpp"

namespace pathauction {

// Per-arc discrepancy r_ij = max{0, p_i - a_ij - p_j}: how far downhill each
// arc is. Together with a path it carries the suboptimality bookkeeping.
struct DiscrepancyReport {
  std::vector<double> arc_discrepancy;  // aligned with graph arc ids
  double max_discrepancy = 0.0;
  bool has_path = false;
  double path_length = 0.0;   // L_P, summed over stored path arcs
  double price_gap = 0.0;     // p_s - p_t
};

struct AwpcResult : RunResult {
  DiscrepancyReport report;
};

// Downstream neighbor minimizing a_ij + p_j (ties by tie_break). Coincides
// with succ_node when all lengths are zero.
NodeId succ_arc(const Graph& graph, const PriceVector& prices, NodeId node,
                TieBreak tie_break = TieBreak::kMinId, double tolerance = 0.0);

// One weighted auction iteration under the standard price rule.
TraceRecord awpc_step(const Graph& graph, PathState& state, const SolverConfig& config);

// Same iteration with the capped extension rise that preserves epsilon-CS.
TraceRecord awpc_step_cs(const Graph& graph, PathState& state, const SolverConfig& config);

// Runs the weighted engine. Preconditions: t reachable from s and all cycles
// nonnegative; with the CS rule the initial prices must satisfy the all-arcs
// half of epsilon-CS.
AwpcResult awpc_run(const Graph& graph, NodeId s, NodeId t, PriceVector initial_prices,
                    const SolverConfig& config, PriceRule rule = PriceRule::kStandard);

DiscrepancyReport discrepancies(const Graph& graph, const PriceVector& prices);
DiscrepancyReport discrepancies(const Graph& graph, const PriceVector& prices,
                                const Path& path);

struct SuboptimalityBound {
  double reference_length = 0.0;  // L of the reference path
  double tight = 0.0;             // L_ref + sum of reference-arc discrepancies
  double coarse = 0.0;            // L_ref + (n + 1) * max discrepancy
};

// Bounds L_P by L_ref plus reference-path discrepancies. The run path must
// contain no uphill arc under the report's prices.
SuboptimalityBound suboptimality_bound(const Graph& graph, const DiscrepancyReport& report,
                                       const PriceVector& prices, const Path& run_path,
                                       const Path& reference_path);

struct EcsViolation {
  ArcId arc = -1;
  double magnitude = 0.0;
  bool on_path = false;  // violates the path half rather than the all-arcs half
};

struct EcsReport {
  bool ok = true;
  std::vector<EcsViolation> violations;
};

// epsilon-CS: every arc downhill by at most epsilon, and every path arc level
// or downhill. Pass an empty or single-node path for the degenerate case.
EcsReport check_epsilon_cs(const Graph& graph, const PriceVector& prices, const Path& path,
                           double epsilon);

}  // namespace pathauction

#endif  // PATHAUCTION_AWPC_HPP
