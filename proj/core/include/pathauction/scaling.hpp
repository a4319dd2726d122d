#ifndef PATHAUCTION_SCALING_HPP
#define PATHAUCTION_SCALING_HPP

#include <vector>

#include "pathauction/awpc.hpp"
#include "pathauction/config.hpp"
#include "pathauction/graph.hpp"

namespace pathauction {

struct PhaseStats {
  double epsilon = 0.0;
  std::int64_t iterations = 0;
  std::int64_t steps = 0;
  double path_length = 0.0;
};

struct ScaleResult {
  Path path;          // path of the final phase
  PriceVector prices; // final prices, reusable as a warm start
  std::vector<PhaseStats> phases;
  std::int64_t total_steps = 0;
  std::int64_t total_iterations = 0;
};

// eps0 = max arc length (1 if none positive), theta = 0.25.
ScalingSchedule default_schedule(const Graph& graph, double eps_min);

// Reruns AWPC with epsilon shrinking by theta each phase, feeding each
// phase's final prices into the next. No optimality guarantee.
ScaleResult scale_run_naive(const Graph& graph, NodeId s, NodeId t, PriceVector initial_prices,
                            const ScalingSchedule& schedule, const SolverConfig& config,
                            PriceRule rule = PriceRule::kStandard);

// Raises prices on an acyclic graph so that every arc is downhill by at most
// eps_prime. Prices only increase; each raise is the minimum that clears the
// node's incoming violations at the time it is processed.
PriceVector repair_prices_acyclic(const Graph& graph, const PriceVector& prices,
                                  double eps_prime);

// Alternates CS-rule runs with acyclic price repair; the final path is
// suboptimal by at most (n + 1) * eps_min. Requires an acyclic graph and
// initial prices satisfying the eps0 all-arcs condition.
ScaleResult scale_run_guaranteed(const Graph& graph, NodeId s, NodeId t,
                                 PriceVector initial_prices, const ScalingSchedule& schedule,
                                 const SolverConfig& config);

}  // namespace pathauction

#endif  // PATHAUCTION_SCALING_HPP
