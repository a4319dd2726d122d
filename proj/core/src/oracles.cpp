#include "pathauction/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace pathauction::oracles {

namespace {

// Walks predecessor pointers from a node known to sit under a negative
// cycle's influence and extracts the cycle as [n0, ..., n0].
std::vector<NodeId> extract_cycle(const std::vector<NodeId>& pred, NodeId start, int n) {
  NodeId cursor = start;
  for (int i = 0; i < n; ++i) cursor = pred[cursor];
  std::vector<NodeId> cycle{cursor};
  for (NodeId v = pred[cursor]; ; v = pred[v]) {
    cycle.push_back(v);
    if (v == cursor) break;
  }
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

DistanceResult bellman_ford_distances(const Graph& graph, NodeId t) {
  if (!graph.valid_node(t)) {
    throw_error(ErrorCode::kNodeOutOfRange, "bellman_ford_distances: t out of range");
  }
  const int n = graph.node_count();
  DistanceResult result;
  result.distances.assign(n, kInfinity);
  result.distances[t] = 0.0;
  std::vector<NodeId> succ(n, -1);

  for (int round = 0; round < n - 1; ++round) {
    bool changed = false;
    for (const Arc& arc : graph.arcs()) {
      const double through = arc.length + result.distances[arc.end];
      if (std::isfinite(through) && through < result.distances[arc.start]) {
        result.distances[arc.start] = through;
        succ[arc.start] = arc.end;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (const Arc& arc : graph.arcs()) {
    const double through = arc.length + result.distances[arc.end];
    if (std::isfinite(through) && through < result.distances[arc.start] - 1e-12) {
      result.has_negative_cycle = true;
      // succ chains run along arcs toward t, so the walk needs no reversal.
      NodeId cursor = arc.start;
      for (int i = 0; i < n; ++i) cursor = succ[cursor];
      result.cycle = {cursor};
      for (NodeId v = succ[cursor];; v = succ[v]) {
        result.cycle.push_back(v);
        if (v == cursor) break;
      }
      result.distances.clear();
      return result;
    }
  }
  return result;
}

DistanceResult find_negative_cycle(const Graph& graph) {
  const int n = graph.node_count();
  DistanceResult result;
  // Virtual source at distance 0 to every node catches cycles anywhere.
  std::vector<double> dist(n, 0.0);
  std::vector<NodeId> pred(n, -1);
  NodeId improved = -1;
  for (int round = 0; round < n; ++round) {
    improved = -1;
    for (const Arc& arc : graph.arcs()) {
      if (dist[arc.start] + arc.length < dist[arc.end] - 1e-12) {
        dist[arc.end] = dist[arc.start] + arc.length;
        pred[arc.end] = arc.start;
        improved = arc.end;
      }
    }
    if (improved == -1) return result;
  }
  result.has_negative_cycle = true;
  result.cycle = extract_cycle(pred, improved, n);
  return result;
}

std::vector<EnumeratedPath> enumerate_paths(const Graph& graph, NodeId s, NodeId t,
                                            int node_limit) {
  if (graph.node_count() > node_limit) {
    throw_error(ErrorCode::kTooLarge,
                "exhaustive enumeration limited to " + std::to_string(node_limit) + " nodes");
  }
  if (!graph.valid_node(s) || !graph.valid_node(t)) {
    throw_error(ErrorCode::kNodeOutOfRange, "enumerate_paths: node out of range");
  }
  std::vector<EnumeratedPath> found;
  Path current{s};
  std::vector<char> used(graph.node_count(), 0);
  used[s] = 1;
  double length = 0.0;

  auto dfs = [&](auto&& self, NodeId u) -> void {
    if (u == t) {
      found.push_back(EnumeratedPath{current, length});
      return;
    }
    for (ArcId id : graph.out_arcs(u)) {
      const Arc& arc = graph.arc(id);
      if (used[arc.end]) continue;
      used[arc.end] = 1;
      current.push_back(arc.end);
      length += arc.length;
      self(self, arc.end);
      length -= arc.length;
      current.pop_back();
      used[arc.end] = 0;
    }
  };
  dfs(dfs, s);
  return found;
}

namespace {

// Self-contained residual edge list for the flow oracles. Every original arc
// gets a companion reverse edge of zero capacity; augmenting one direction
// frees the other.
struct EdgeList {
  std::vector<NodeId> from;
  std::vector<NodeId> to;
  std::vector<double> residual;
  std::vector<double> cost;
  std::vector<std::vector<int>> adjacency;  // node -> edge ids

  explicit EdgeList(const Graph& g) {
    adjacency.resize(g.node_count());
    from.reserve(2 * g.arc_count());
    for (ArcId id = 0; id < g.arc_count(); ++id) {
      const Arc& arc = g.arc(id);
      add(arc.start, arc.end, arc.capacity, arc.length);
      add(arc.end, arc.start, 0.0, -arc.length);
    }
  }

  void add(NodeId u, NodeId v, double cap, double c) {
    const int id = static_cast<int>(from.size());
    from.push_back(u);
    to.push_back(v);
    residual.push_back(cap);
    cost.push_back(c);
    adjacency[u].push_back(id);
  }

  void push(int edge, double amount) {
    residual[edge] -= amount;
    residual[edge ^ 1] += amount;
  }

  // Flow actually on original arc `id` is what moved onto its reverse edge.
  double flow_on(ArcId id) const { return residual[2 * id + 1]; }
};

}  // namespace

OracleFlowResult oracle_max_flow(const FlowProblem& problem) {
  const Graph& g = problem.graph;
  EdgeList edges(g);
  OracleFlowResult result;

  while (true) {
    // BFS for a shortest augmenting path.
    std::vector<int> via(g.node_count(), -1);
    std::vector<char> visited(g.node_count(), 0);
    std::deque<NodeId> queue{problem.source};
    visited[problem.source] = 1;
    while (!queue.empty() && !visited[problem.sink]) {
      NodeId u = queue.front();
      queue.pop_front();
      for (int e : edges.adjacency[u]) {
        if (edges.residual[e] <= 0.0 || visited[edges.to[e]]) continue;
        visited[edges.to[e]] = 1;
        via[edges.to[e]] = e;
        queue.push_back(edges.to[e]);
      }
    }
    if (!visited[problem.sink]) break;

    double bottleneck = kInfinity;
    for (NodeId v = problem.sink; v != problem.source; v = edges.from[via[v]]) {
      bottleneck = std::min(bottleneck, edges.residual[via[v]]);
    }
    for (NodeId v = problem.sink; v != problem.source; v = edges.from[via[v]]) {
      edges.push(via[v], bottleneck);
    }
    result.value += bottleneck;
  }

  result.flow.resize(g.arc_count());
  for (ArcId id = 0; id < g.arc_count(); ++id) {
    result.flow[id] = edges.flow_on(id);
    result.cost += result.flow[id] * g.arc(id).length;
  }
  return result;
}

OracleFlowResult oracle_min_cost_flow(const FlowProblem& problem) {
  const Graph& g = problem.graph;
  for (const Arc& arc : g.arcs()) {
    if (arc.length < 0.0) {
      throw_error(ErrorCode::kInvalidArgument,
                  "oracle_min_cost_flow requires nonnegative costs");
    }
  }
  EdgeList edges(g);
  OracleFlowResult result;
  double remaining = problem.supply;

  while (remaining > 0.0) {
    // Bellman-Ford over residual edges (reverse edges carry negative cost).
    std::vector<double> dist(g.node_count(), kInfinity);
    std::vector<int> via(g.node_count(), -1);
    dist[problem.source] = 0.0;
    for (int round = 0; round < g.node_count() - 1; ++round) {
      bool changed = false;
      for (int e = 0; e < static_cast<int>(edges.from.size()); ++e) {
        if (edges.residual[e] <= 0.0 || !std::isfinite(dist[edges.from[e]])) continue;
        const double through = dist[edges.from[e]] + edges.cost[e];
        if (through < dist[edges.to[e]] - 1e-12) {
          dist[edges.to[e]] = through;
          via[edges.to[e]] = e;
          changed = true;
        }
      }
      if (!changed) break;
    }
    if (!std::isfinite(dist[problem.sink])) {
      throw_error(ErrorCode::kInfeasible,
                  "cannot route " + std::to_string(problem.supply) + " units; " +
                      std::to_string(problem.supply - remaining) + " routed");
    }

    double bottleneck = remaining;
    for (NodeId v = problem.sink; v != problem.source; v = edges.from[via[v]]) {
      bottleneck = std::min(bottleneck, edges.residual[via[v]]);
    }
    for (NodeId v = problem.sink; v != problem.source; v = edges.from[via[v]]) {
      edges.push(via[v], bottleneck);
    }
    result.value += bottleneck;
    remaining -= bottleneck;
  }

  result.flow.resize(g.arc_count());
  for (ArcId id = 0; id < g.arc_count(); ++id) {
    result.flow[id] = edges.flow_on(id);
    result.cost += result.flow[id] * g.arc(id).length;
  }
  return result;
}

}  // namespace pathauction::oracles
