#ifndef PATHAUCTION_MULTIPATH_HPP
#define PATHAUCTION_MULTIPATH_HPP

#include <map>
#include <vector>

#include "pathauction/apc.hpp"
#include "pathauction/awpc.hpp"
#include "pathauction/config.hpp"

namespace pathauction {

enum class EngineKind { kApc, kAwpc };

struct MultiDestinationResult {
  std::map<NodeId, Path> paths;  // destination -> path
  PriceVector prices;
  std::int64_t total_steps = 0;
};

// Runs one engine from s until every listed destination has been reached,
// recording the path each time one becomes terminal and restarting from the
// degenerate path (prices persist).
MultiDestinationResult run_multi_destination(const Graph& graph, NodeId s,
                                             const std::vector<NodeId>& destinations,
                                             PriceVector initial_prices,
                                             const SolverConfig& config,
                                             EngineKind engine = EngineKind::kApc,
                                             PriceRule rule = PriceRule::kStandard);

struct Junction {
  NodeId origin = -1;       // origin whose construction spliced
  NodeId at_node = -1;      // node where the extension landed
  NodeId joined_origin = -1;  // owner of the path whose tail was reused
};

struct PathTree {
  NodeId destination = -1;
  std::map<NodeId, Path> paths;  // origin -> complete path to destination
  std::vector<Junction> junctions;
  PriceVector prices;
  std::int64_t total_steps = 0;
};

// Processes origins in caller order with shared persistent prices. When an
// extension lands on a node of an earlier completed path, that path's tail is
// spliced on and the origin completes immediately; a splice that would repeat
// a node is skipped and iteration continues.
PathTree run_multi_origin_tree(const Graph& graph, const std::vector<NodeId>& origins,
                               NodeId t, PriceVector initial_prices,
                               const SolverConfig& config,
                               EngineKind engine = EngineKind::kApc,
                               PriceRule rule = PriceRule::kStandard);

// Exposed for testing: composite path if the tail of `host` starting at
// `junction` can extend `current` without repeating a node.
std::optional<Path> try_splice(const Path& current, const Path& host, NodeId junction);

}  // namespace pathauction

#endif  // PATHAUCTION_MULTIPATH_HPP
