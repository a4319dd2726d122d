#ifndef PATHAUCTION_TRANSPORT_HPP
#define PATHAUCTION_TRANSPORT_HPP

#include <optional>
#include <utility>
#include <vector>

#include "pathauction/apc.hpp"
#include "pathauction/awpc.hpp"
#include "pathauction/config.hpp"
#include "pathauction/graph.hpp"
#include "pathauction/scaling.hpp"

namespace pathauction {

// Single-commodity transport instance: route `supply` units from source to
// sink under arc capacities. The source has no incoming and the sink no
// outgoing arcs.
struct FlowProblem {
  Graph graph;
  NodeId source = -1;
  NodeId sink = -1;
  double supply = 0.0;

  FlowProblem(Graph g, NodeId s, NodeId t, double r);
};

struct FlowState {
  std::vector<double> flow;  // x_ij per arc id
  double routed = 0.0;
  PriceVector prices;  // final prices, reusable for warm restarts
};

// Conservation at interior nodes, capacity bounds, and matching divergence
// at source and sink. Used by tests after every augmentation.
bool flow_state_valid(const FlowProblem& problem, const FlowState& state,
                      double tolerance = 1e-9);

struct AugmentationStats {
  double epsilon = 0.0;
  std::int64_t iterations = 0;
  std::int64_t steps = 0;
  double amount = 0.0;
  double path_length = 0.0;
};

struct FlowResult {
  FlowState state;
  double value = 0.0;      // routed amount
  double cost = 0.0;       // sum a_ij * x_ij
  std::vector<AugmentationStats> augmentations;
  std::int64_t total_steps = 0;
};

// Smallest residual capacity along a path of the residual graph.
double path_residual_capacity(const ResidualGraph& residual, const Path& path);

// Pushes `amount` along a residual path: forward arcs gain flow, reverse arcs
// give it back to the underlying arc.
void augment(const ResidualGraph& residual, std::vector<double>& flow, const Path& path,
             double amount);

// Successive APC path constructions in the reduced graph with price reuse,
// augmenting by the path bottleneck until `supply` units are routed.
FlowResult solve_feasible_flow(const FlowProblem& problem, const SolverConfig& config,
                               PriceVector initial_prices = {});

// Augments until the sink is unreachable; returns the max-flow value.
FlowResult solve_max_flow(const FlowProblem& problem, const SolverConfig& config,
                          PriceVector initial_prices = {});

// How the weighted solvers pick epsilon per augmentation.
enum class AugmentEpsMode {
  kFloorEps,         // every augmentation at schedule.eps_min with the CS rule
  kSharedSchedule,   // augmentation k at eps0 * theta^k (standard rule)
  kRescaleEach,      // full naive scaling schedule inside each augmentation
};

// Near-shortest augmenting paths via AWPC with price reuse. Nonnegative arc
// costs required so zero prices satisfy epsilon-CS on the first residual
// graph.
FlowResult solve_min_cost_flow(const FlowProblem& problem, const ScalingSchedule& schedule,
                               const SolverConfig& config,
                               AugmentEpsMode mode = AugmentEpsMode::kFloorEps,
                               PriceVector initial_prices = {});

// Bipartite matching instance converted to the flow form: source -> persons
// -> objects -> sink, all capacities 1, supply min(left, right).
struct MatchingFlow {
  FlowProblem problem;
  int left_size = 0;
  int right_size = 0;

  NodeId source() const { return 0; }
  NodeId person_node(int person) const { return 1 + person; }
  NodeId object_node(int object) const { return 1 + left_size + object; }
  NodeId sink() const { return 1 + left_size + right_size; }
  int person_of(NodeId node) const { return node - 1; }
  int object_of(NodeId node) const { return node - 1 - left_size; }
};

MatchingFlow matching_to_flow(int left_size, int right_size,
                              const std::vector<std::pair<int, int>>& allowed_pairs,
                              const std::vector<double>& pair_costs = {});

struct AssignmentResult {
  std::vector<std::pair<int, int>> matching;  // (person, object), 0-based
  double total_cost = 0.0;
  FlowResult flow;
};

// Solves a square assignment problem by n successive AWPC augmentations with
// carried-over prices.
AssignmentResult solve_assignment(const MatchingFlow& instance, const ScalingSchedule& schedule,
                                  const SolverConfig& config,
                                  AugmentEpsMode mode = AugmentEpsMode::kFloorEps);

}  // namespace pathauction

#endif  // PATHAUCTION_TRANSPORT_HPP
