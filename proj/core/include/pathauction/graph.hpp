#ifndef PATHAUCTION_GRAPH_HPP
#define PATHAUCTION_GRAPH_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pathauction/errors.hpp"

namespace pathauction {

using NodeId = int;
using ArcId = int;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Directed arc with a length (cost per traversal) and an optional capacity.
// An infinite capacity means the arc is uncapacitated.
struct Arc {
  NodeId start = 0;
  NodeId end = 0;
  double length = 0.0;
  double capacity = kInfinity;
};

using PriceVector = std::vector<double>;
using Path = std::vector<NodeId>;

enum class ArcClass { kDownhill, kLevel, kUphill };

// Immutable directed graph: dense node ids in [0, N), at most one arc per
// ordered (start, end) pair, no self arcs. Adjacency is stored both ways so
// residual construction and reverse traversals stay cheap.
class Graph {
 public:
  Graph(int node_count, std::vector<Arc> arcs);

  int node_count() const { return node_count_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(ArcId id) const { return arcs_[id]; }

  const std::vector<ArcId>& out_arcs(NodeId node) const { return out_arcs_[node]; }
  const std::vector<ArcId>& in_arcs(NodeId node) const { return in_arcs_[node]; }

  // A node with no outgoing arcs.
  bool is_deadend(NodeId node) const { return out_arcs_[node].empty(); }

  std::optional<ArcId> find_arc(NodeId start, NodeId end) const;

  bool valid_node(NodeId node) const { return node >= 0 && node < node_count_; }

 private:
  int node_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_arcs_;
  std::vector<std::vector<ArcId>> in_arcs_;
  std::unordered_map<std::int64_t, ArcId> arc_index_;
};

Graph build_graph(int node_count, const std::vector<Arc>& arcs);

// Weighted comparison of p_start against length + p_end. Infinite end price
// classifies as uphill; an infinite start price over a finite end price as
// downhill; two infinite prices as level. `tolerance` widens the level band.
ArcClass classify_arc(const Arc& arc, const PriceVector& prices, double tolerance = 0.0);

bool reachable(const Graph& graph, NodeId s, NodeId t);

struct CycleCheck {
  bool ok = true;
  std::vector<NodeId> cycle;  // witness as [n0, n1, ..., n0] when !ok
  double length = 0.0;
};

// Passes iff every directed cycle has nonnegative total length.
CycleCheck check_nonnegative_cycles(const Graph& graph);

// Kahn topological order; empty result when the graph has a cycle.
std::optional<std::vector<NodeId>> topological_order(const Graph& graph);

inline bool is_acyclic(const Graph& graph) { return topological_order(graph).has_value(); }

// Provenance of a residual arc: which original arc it came from and whether
// it runs against that arc's direction.
struct ResidualArcInfo {
  ArcId original_arc = -1;
  bool reversed = false;
};

struct ResidualGraph {
  Graph graph;
  std::vector<ResidualArcInfo> info;  // aligned with graph arc ids

  double residual_capacity(ArcId id) const { return graph.arc(id).capacity; }
};

// Reduced graph for a flow: a forward arc survives while x < c (capacity
// c - x), and a reverse arc (j,i) with length -a_ij carries x_ij > 0. When
// both a surviving forward arc and a reverse arc would share an ordered
// pair, the smaller length wins (forward on ties).
ResidualGraph residual_graph(const Graph& graph, const std::vector<double>& flow);

}  // namespace pathauction

#endif  // PATHAUCTION_GRAPH_HPP
