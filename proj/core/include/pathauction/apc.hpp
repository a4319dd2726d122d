#ifndef PATHAUCTION_APC_HPP
#define PATHAUCTION_APC_HPP

#include <cstdint>
#include <vector>

#include "pathauction/config.hpp"
#include "pathauction/graph.hpp"
#include "pathauction/trace.hpp"

namespace pathauction {

enum class LastAction { kInit, kExtension, kContraction };

// Path maintained by the auction engines plus the evolving prices. The path
// always starts at the origin and contains distinct nodes; the downhill path
// property ties the last arc's classification to `last_action`.
struct PathState {
  Path path;
  std::vector<char> on_path;
  PriceVector prices;
  NodeId destination = -1;
  LastAction last_action = LastAction::kInit;
  std::int64_t steps = 0;  // extensions + contractions performed so far

  NodeId origin() const { return path.front(); }
  NodeId terminal() const { return path.back(); }
  NodeId pred_of_terminal() const { return path[path.size() - 2]; }
  bool degenerate() const { return path.size() == 1; }
  bool terminated() const { return terminal() == destination; }
};

PathState init_state(const Graph& graph, NodeId s, NodeId t, PriceVector prices);

struct RunResult {
  Path path;
  PriceVector prices;
  std::int64_t iterations = 0;  // trace rows, terminate record included
  std::int64_t steps = 0;       // extensions + contractions
  std::int64_t extensions = 0;
  std::int64_t contractions = 0;
  Trace trace;  // populated when config.trace is set
};

// Downstream neighbor of `node` with minimal price (ties by tie_break).
NodeId succ_node(const Graph& graph, const PriceVector& prices, NodeId node,
                 TieBreak tie_break = TieBreak::kMinId, double tolerance = 0.0);

// One unweighted auction iteration: extend or contract and apply the price
// rise. The returned record describes the state prior to the step.
TraceRecord apc_step(const Graph& graph, PathState& state, const SolverConfig& config);

// Runs the unweighted engine until the destination becomes terminal. Initial
// prices are arbitrary finite values; reachability is checked up front.
RunResult apc_run(const Graph& graph, NodeId s, NodeId t, PriceVector initial_prices,
                  const SolverConfig& config);

std::int64_t default_iteration_limit(const Graph& graph);

double path_length(const Graph& graph, const Path& path);

bool is_valid_path(const Graph& graph, const Path& path);

}  // namespace pathauction

#endif  // PATHAUCTION_APC_HPP
