#include "pathauction/graph.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "pathauction/oracles.hpp"

namespace pathauction {

namespace {

std::int64_t pair_key(NodeId start, NodeId end) {
  return (static_cast<std::int64_t>(start) << 32) | static_cast<std::uint32_t>(end);
}

}  // namespace

Graph::Graph(int node_count, std::vector<Arc> arcs)
    : node_count_(node_count), arcs_(std::move(arcs)) {
  out_arcs_.resize(node_count_);
  in_arcs_.resize(node_count_);
  arc_index_.reserve(arcs_.size());
  for (ArcId id = 0; id < static_cast<ArcId>(arcs_.size()); ++id) {
    const Arc& arc = arcs_[id];
    out_arcs_[arc.start].push_back(id);
    in_arcs_[arc.end].push_back(id);
    arc_index_.emplace(pair_key(arc.start, arc.end), id);
  }
}

std::optional<ArcId> Graph::find_arc(NodeId start, NodeId end) const {
  auto it = arc_index_.find(pair_key(start, end));
  if (it == arc_index_.end()) return std::nullopt;
  return it->second;
}

Graph build_graph(int node_count, const std::vector<Arc>& arcs) {
  if (node_count <= 0) {
    throw_error(ErrorCode::kInvalidArgument, "node count must be positive");
  }
  if (arcs.empty()) {
    throw_error(ErrorCode::kInvalidArgument, "arc list is empty");
  }
  std::unordered_map<std::int64_t, int> seen;
  seen.reserve(arcs.size());
  for (const Arc& arc : arcs) {
    if (arc.start < 0 || arc.start >= node_count || arc.end < 0 || arc.end >= node_count) {
      throw_error(ErrorCode::kNodeOutOfRange,
                  "arc (" + std::to_string(arc.start) + "," + std::to_string(arc.end) +
                      ") has an endpoint outside [0," + std::to_string(node_count) + ")");
    }
    if (arc.start == arc.end) {
      throw_error(ErrorCode::kSelfArc, "self arc at node " + std::to_string(arc.start));
    }
    if (!(arc.capacity > 0.0)) {
      throw_error(ErrorCode::kInvalidArgument,
                  "arc (" + std::to_string(arc.start) + "," + std::to_string(arc.end) +
                      ") has nonpositive capacity");
    }
    if (!std::isfinite(arc.length)) {
      throw_error(ErrorCode::kInvalidArgument, "arc length must be finite");
    }
    if (!seen.emplace(pair_key(arc.start, arc.end), 1).second) {
      throw_error(ErrorCode::kDuplicateArc,
                  "duplicate arc (" + std::to_string(arc.start) + "," +
                      std::to_string(arc.end) + ")");
    }
  }
  return Graph(node_count, arcs);
}

ArcClass classify_arc(const Arc& arc, const PriceVector& prices, double tolerance) {
  const double p_start = prices[arc.start];
  const double p_end = prices[arc.end];
  if (std::isinf(p_end)) {
    return std::isinf(p_start) ? ArcClass::kLevel : ArcClass::kUphill;
  }
  if (std::isinf(p_start)) return ArcClass::kDownhill;
  const double rhs = arc.length + p_end;
  if (p_start > rhs + tolerance) return ArcClass::kDownhill;
  if (p_start < rhs - tolerance) return ArcClass::kUphill;
  return ArcClass::kLevel;
}

bool reachable(const Graph& graph, NodeId s, NodeId t) {
  if (!graph.valid_node(s) || !graph.valid_node(t)) {
    throw_error(ErrorCode::kNodeOutOfRange, "reachable: node out of range");
  }
  std::vector<char> visited(graph.node_count(), 0);
  std::deque<NodeId> queue{s};
  visited[s] = 1;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    if (u == t) return true;
    for (ArcId id : graph.out_arcs(u)) {
      NodeId v = graph.arc(id).end;
      if (!visited[v]) {
        visited[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return false;
}

CycleCheck check_nonnegative_cycles(const Graph& graph) {
  oracles::DistanceResult detection = oracles::find_negative_cycle(graph);
  CycleCheck result;
  if (detection.has_negative_cycle) {
    result.ok = false;
    result.cycle = detection.cycle;
    result.length = 0.0;
    for (std::size_t i = 0; i + 1 < detection.cycle.size(); ++i) {
      auto arc = graph.find_arc(detection.cycle[i], detection.cycle[i + 1]);
      result.length += graph.arc(*arc).length;
    }
  }
  return result;
}

std::optional<std::vector<NodeId>> topological_order(const Graph& graph) {
  std::vector<int> in_degree(graph.node_count(), 0);
  for (const Arc& arc : graph.arcs()) ++in_degree[arc.end];
  std::deque<NodeId> queue;
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (in_degree[v] == 0) queue.push_back(v);
  }
  std::vector<NodeId> order;
  order.reserve(graph.node_count());
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    order.push_back(u);
    for (ArcId id : graph.out_arcs(u)) {
      NodeId v = graph.arc(id).end;
      if (--in_degree[v] == 0) queue.push_back(v);
    }
  }
  if (static_cast<int>(order.size()) != graph.node_count()) return std::nullopt;
  return order;
}

ResidualGraph residual_graph(const Graph& graph, const std::vector<double>& flow) {
  if (static_cast<int>(flow.size()) != graph.arc_count()) {
    throw_error(ErrorCode::kInvalidArgument, "flow vector size does not match arc count");
  }
  for (ArcId id = 0; id < graph.arc_count(); ++id) {
    const Arc& arc = graph.arc(id);
    if (flow[id] < 0.0 || flow[id] > arc.capacity) {
      throw_error(ErrorCode::kCapacityViolated,
                  "flow on arc (" + std::to_string(arc.start) + "," +
                      std::to_string(arc.end) + ") violates its capacity bounds");
    }
  }

  struct Candidate {
    Arc arc;
    ResidualArcInfo info;
  };
  std::unordered_map<std::int64_t, Candidate> chosen;
  auto offer = [&](const Arc& arc, const ResidualArcInfo& info) {
    const std::int64_t key = pair_key(arc.start, arc.end);
    auto it = chosen.find(key);
    if (it == chosen.end()) {
      chosen.emplace(key, Candidate{arc, info});
      return;
    }
    // Same ordered pair twice means the original graph has both (i,j) and
    // (j,i); keep the smaller length, forward direction on ties.
    const bool replace = arc.length < it->second.arc.length ||
                         (arc.length == it->second.arc.length && it->second.info.reversed &&
                          !info.reversed);
    if (replace) it->second = Candidate{arc, info};
  };

  for (ArcId id = 0; id < graph.arc_count(); ++id) {
    const Arc& arc = graph.arc(id);
    if (flow[id] < arc.capacity) {
      offer(Arc{arc.start, arc.end, arc.length, arc.capacity - flow[id]},
            ResidualArcInfo{id, false});
    }
    if (flow[id] > 0.0) {
      offer(Arc{arc.end, arc.start, -arc.length, flow[id]}, ResidualArcInfo{id, true});
    }
  }

  std::vector<Arc> arcs;
  std::vector<ResidualArcInfo> info;
  arcs.reserve(chosen.size());
  info.reserve(chosen.size());
  // Deterministic arc order: follow original arc ids, forward then reverse.
  for (ArcId id = 0; id < graph.arc_count(); ++id) {
    const Arc& arc = graph.arc(id);
    auto take = [&](NodeId start, NodeId end) {
      auto it = chosen.find(pair_key(start, end));
      if (it != chosen.end() && it->second.info.original_arc == id) {
        arcs.push_back(it->second.arc);
        info.push_back(it->second.info);
      }
    };
    take(arc.start, arc.end);
    take(arc.end, arc.start);
  }
  return ResidualGraph{Graph(graph.node_count(), std::move(arcs)), std::move(info)};
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNodeOutOfRange: return "node_out_of_range";
    case ErrorCode::kSelfArc: return "self_arc";
    case ErrorCode::kDuplicateArc: return "duplicate_arc";
    case ErrorCode::kDeadendNode: return "deadend_node";
    case ErrorCode::kAlreadyTerminated: return "already_terminated";
    case ErrorCode::kUnreachable: return "unreachable";
    case ErrorCode::kIterationLimitExceeded: return "iteration_limit_exceeded";
    case ErrorCode::kNegativeCycle: return "negative_cycle";
    case ErrorCode::kCycleCreated: return "cycle_created";
    case ErrorCode::kEcsViolatedOnEntry: return "ecs_violated_on_entry";
    case ErrorCode::kCyclicGraph: return "cyclic_graph";
    case ErrorCode::kNotEntryFeasible: return "not_entry_feasible";
    case ErrorCode::kCapacityViolated: return "capacity_violated";
    case ErrorCode::kAmountExceedsResidual: return "amount_exceeds_residual";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kUphillArcOnPath: return "uphill_arc_on_path";
    case ErrorCode::kParseError: return "parse_error";
    case ErrorCode::kTooLarge: return "too_large";
  }
  return "unknown";
}

}  // namespace pathauction
