#ifndef PATHAUCTION_ORACLES_HPP
#define PATHAUCTION_ORACLES_HPP

#include <vector>

#include "pathauction/graph.hpp"
#include "pathauction/transport.hpp"

// Independent reference implementations used for property tests and expected
// values. Deliberately simple and exhaustive; they share no traversal code
// with the auction engines.
namespace pathauction::oracles {

struct DistanceResult {
  bool has_negative_cycle = false;
  std::vector<double> distances;   // d*_i to t, +inf when t is unreachable
  std::vector<NodeId> cycle;       // witness [n0, ..., n0] when negative
};

// Exact shortest distances to t (Bellman-Ford), negative lengths allowed.
DistanceResult bellman_ford_distances(const Graph& graph, NodeId t);

// Any negative cycle in the graph, not just those that reach t.
DistanceResult find_negative_cycle(const Graph& graph);

struct EnumeratedPath {
  Path path;
  double length = 0.0;
};

inline constexpr int kEnumerationNodeLimit = 12;

// Every simple s->t path with its length. Errors with kTooLarge above the
// node limit.
std::vector<EnumeratedPath> enumerate_paths(const Graph& graph, NodeId s, NodeId t,
                                            int node_limit = kEnumerationNodeLimit);

struct OracleFlowResult {
  double value = 0.0;
  double cost = 0.0;
  std::vector<double> flow;  // per original arc id
};

// Max-flow by breadth-first augmenting paths (Edmonds-Karp).
OracleFlowResult oracle_max_flow(const FlowProblem& problem);

// Exact min-cost routing of problem.supply units by successive shortest
// augmenting paths with Bellman-Ford distances. Nonnegative costs required.
OracleFlowResult oracle_min_cost_flow(const FlowProblem& problem);

}  // namespace pathauction::oracles

#endif  // PATHAUCTION_ORACLES_HPP
