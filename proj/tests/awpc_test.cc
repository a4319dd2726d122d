#include "pathauction/awpc.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "pathauction/oracles.hpp"
#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"
#include "support/validators.hpp"

namespace pathauction {
namespace {

using testing::action_signature;
using testing::chain_with_bypass;
using testing::check_trace_epsilon_cs;
using testing::check_trace_invariants;
using testing::cycle_trap_graph;
using testing::four_node_diamond;
using testing::kCycleTrapS;
using testing::kCycleTrapT;
using testing::kDiamondS;
using testing::kDiamondT;
using testing::random_prices;
using testing::random_reachable_graph;

void expect_prices(const PriceVector& got, const PriceVector& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_DOUBLE_EQ(got[i], want[i]) << "price index " << i;
  }
}

TEST(SuccArc, MinimizesLengthPlusPrice) {
  Graph g = four_node_diamond();
  // 1+4 vs 2+0: node 2 wins.
  EXPECT_EQ(succ_arc(g, {0.0, 4.0, 0.0, 0.0}, 0), 2);
  // 1+4 vs 2+3.5: node 1 wins.
  EXPECT_EQ(succ_arc(g, {0.0, 4.0, 3.5, 0.0}, 0), 1);
  // Equal values fall back to the smallest id.
  EXPECT_EQ(succ_arc(g, {0.0, 1.0, 0.0, 0.0}, 0), 1);
}

PathState diamond_state(const Graph& g, Path path, PriceVector prices,
                        LastAction last) {
  PathState state = init_state(g, kDiamondS, kDiamondT, std::move(prices));
  state.path = std::move(path);
  std::fill(state.on_path.begin(), state.on_path.end(), 0);
  for (NodeId v : state.path) state.on_path[v] = 1;
  state.last_action = last;
  return state;
}

TEST(AwpcStep, EarlyContractionMatchesTable) {
  Graph g = four_node_diamond();
  SolverConfig config;
  config.epsilon = 1.0;
  PathState state = diamond_state(g, {0, 1}, {2.0, 0.0, 0.0, 0.0}, LastAction::kExtension);
  TraceRecord record = awpc_step(g, state, config);
  EXPECT_EQ(record.step_case, StepCase::kC2);
  EXPECT_EQ(record.action, ActionKind::kContraction);
  EXPECT_EQ(state.path, (Path{0}));
  EXPECT_DOUBLE_EQ(state.prices[1], 4.0);  // a_1t + p_t + eps
}

TEST(AwpcStep, LateExtensionMatchesTable) {
  Graph g = four_node_diamond();
  SolverConfig config;
  config.epsilon = 1.0;
  PathState state = diamond_state(g, {0, 1}, {6.0, 4.0, 3.5, 0.0}, LastAction::kExtension);
  TraceRecord record = awpc_step(g, state, config);
  EXPECT_EQ(record.step_case, StepCase::kC1);
  EXPECT_EQ(record.action, ActionKind::kExtension);
  EXPECT_EQ(record.node, 3);
  EXPECT_DOUBLE_EQ(state.prices[1], 5.0);  // p_s - a_s1
}

TEST(AwpcStep, DegenerateMaxKeepsHugeOriginPrice) {
  Graph g = four_node_diamond();
  SolverConfig config;
  PathState state = init_state(g, 0, 3, {50.0, 0.0, 0.0, 0.0});
  awpc_step(g, state, config);
  EXPECT_DOUBLE_EQ(state.prices[0], 50.0);
}

Graph cs_clause_graph(double a_in, double a_out) {
  return build_graph(4, {{0, 1, a_in, kInfinity},
                         {1, 2, a_out, kInfinity},
                         {2, 3, 0.0, kInfinity}});
}

TEST(AwpcStepCs, ExtensionRiseIsCapped) {
  Graph g = cs_clause_graph(2.0, 3.0);
  SolverConfig config;
  config.epsilon = 1.0;
  // p_pred - a_in = 10 vs a_out + p_succ + eps = 7: capped at 7.
  PathState state = init_state(g, 0, 3, {12.0, 6.0, 3.0, 0.0});
  state.path = {0, 1};
  state.on_path[1] = 1;
  state.last_action = LastAction::kExtension;
  TraceRecord record = awpc_step_cs(g, state, config);
  EXPECT_EQ(record.action, ActionKind::kExtension);
  EXPECT_DOUBLE_EQ(state.prices[1], 7.0);
}

TEST(AwpcStepCs, CapInactiveMatchesStandardRule) {
  Graph g = cs_clause_graph(2.0, 1.0);
  SolverConfig config;
  config.epsilon = 3.0;
  // p_pred - a_in = 5 vs a_out + p_succ + eps = 7: the standard rise wins.
  PathState state = init_state(g, 0, 3, {7.0, 4.0, 3.0, 0.0});
  state.path = {0, 1};
  state.on_path[1] = 1;
  state.last_action = LastAction::kExtension;
  TraceRecord record = awpc_step_cs(g, state, config);
  EXPECT_EQ(record.action, ActionKind::kExtension);
  EXPECT_DOUBLE_EQ(state.prices[1], 5.0);
}

TEST(AwpcRun, DiamondEpsilonOneReproducesTheTable) {
  Graph g = four_node_diamond();
  SolverConfig config;
  config.epsilon = 1.0;
  config.trace = true;
  AwpcResult result = awpc_run(g, kDiamondS, kDiamondT, {}, config);

  EXPECT_EQ(result.path, (Path{0, 1, 3}));
  EXPECT_EQ(result.iterations, 7);
  EXPECT_EQ(result.steps, 6);
  expect_prices(result.prices, {6.0, 5.0, 3.5, 0.0});
  EXPECT_EQ(action_signature(result.trace), "E1 C0 E2 C0 E1 E3 T");

  const std::vector<PriceVector> table = {
      {0.0, 0.0, 0.0, 0.0}, {2.0, 0.0, 0.0, 0.0}, {2.0, 4.0, 0.0, 0.0},
      {3.0, 4.0, 0.0, 0.0}, {3.0, 4.0, 3.5, 0.0}, {6.0, 4.0, 3.5, 0.0},
      {6.0, 5.0, 3.5, 0.0},
  };
  ASSERT_EQ(result.trace.size(), table.size());
  for (std::size_t row = 0; row < table.size(); ++row) {
    expect_prices(result.trace[row].prices_prior, table[row]);
  }

  auto check = check_trace_invariants(g, result.trace, /*weighted=*/true, /*cs_rule=*/false);
  EXPECT_TRUE(check.ok) << check.what;
}

TEST(AwpcRun, DiamondLargeEpsilonShortcut) {
  // With eps = 4 the run is two extensions and then termination. The final
  // extension levels arc (s,1), so p_1 lands at p_s - a_s1 = 4.
  Graph g = four_node_diamond();
  SolverConfig config;
  config.epsilon = 4.0;
  config.trace = true;
  AwpcResult result = awpc_run(g, kDiamondS, kDiamondT, {}, config);
  EXPECT_EQ(result.path, (Path{0, 1, 3}));
  EXPECT_EQ(action_signature(result.trace), "E1 E3 T");
  expect_prices(result.prices, {5.0, 4.0, 0.0, 0.0});
  EXPECT_EQ(classify_arc(g.arc(*g.find_arc(0, 1)), result.prices), ArcClass::kLevel);
  EXPECT_EQ(classify_arc(g.arc(*g.find_arc(1, 3)), result.prices), ArcClass::kDownhill);
}

TEST(AwpcRun, CycleTrapFirstEightRowsMatchTheTable) {
  Graph g = cycle_trap_graph(100.0);
  SolverConfig config;
  config.epsilon = 1.0;
  config.trace = true;
  AwpcResult result = awpc_run(g, kCycleTrapS, kCycleTrapT, {}, config);

  const std::vector<PriceVector> table = {
      {0, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 1, 1, 0, 0},
      {1, 1, 1, 2, 0}, {1, 1, 3, 2, 0}, {1, 4, 3, 2, 0}, {5, 4, 3, 2, 0},
  };
  const std::vector<std::string> actions = {"E1", "E2", "E3", "C2",
                                            "C1", "C0", "E1", "E2"};
  ASSERT_GE(result.trace.size(), 9u);
  for (std::size_t row = 0; row < 8; ++row) {
    expect_prices(result.trace[row].prices_prior, table[row]);
    std::string got =
        (result.trace[row].action == ActionKind::kExtension ? "E" : "C") +
        std::to_string(result.trace[row].node);
    EXPECT_EQ(got, actions[row]) << "row " << row;
  }
  // Ninth row: 2*eps < L, so the cycle is taken again.
  EXPECT_EQ(result.trace[8].action, ActionKind::kExtension);
  EXPECT_EQ(result.trace[8].node, 3);
}

TEST(AwpcRun, CycleTrapLargeEpsilonExitsAtNinthStep) {
  Graph g = cycle_trap_graph(1.5);  // 2*eps = 2 > L
  SolverConfig config;
  config.epsilon = 1.0;
  config.trace = true;
  AwpcResult result = awpc_run(g, kCycleTrapS, kCycleTrapT, {}, config);
  EXPECT_EQ(result.steps, 9);
  EXPECT_EQ(result.trace[8].action, ActionKind::kExtension);
  EXPECT_EQ(result.trace[8].node, kCycleTrapT);
}

TEST(AwpcRun, CycleTrapIterationsNonIncreasingInEpsilon) {
  std::int64_t previous = -1;
  for (double eps : {1.0, 2.0, 4.0, 8.0, 16.0, 64.0}) {
    SolverConfig config;
    config.epsilon = eps;
    AwpcResult result = awpc_run(cycle_trap_graph(100.0), kCycleTrapS, kCycleTrapT, {}, config);
    if (previous >= 0) EXPECT_LE(result.steps, previous) << "eps " << eps;
    previous = result.steps;
  }
}

TEST(AwpcRun, ChainLargeEpsilonIsPureExtensionRun) {
  auto chain = chain_with_bypass(3);
  SolverConfig config;
  config.epsilon = 4.0;  // eps > n
  config.trace = true;
  AwpcResult result = awpc_run(chain.graph, chain.s, chain.t, {}, config);
  EXPECT_EQ(result.path, (Path{0, 1, 2, 3, chain.t}));
  EXPECT_EQ(result.steps, 4);  // n + 1 extensions
  EXPECT_EQ(result.extensions, 4);
  EXPECT_EQ(result.contractions, 0);
}

TEST(AwpcRun, ZeroLengthsCoincideWithUnweightedEngine) {
  std::mt19937 rng(83);
  for (int round = 0; round < 80; ++round) {
    auto inst = random_reachable_graph(rng, 9, 0, 0);  // all lengths zero
    PriceVector prices = random_prices(rng, inst.graph.node_count(), 0.0, 5.0);
    SolverConfig config;
    config.epsilon = 1.5;
    config.trace = true;
    AwpcResult weighted = awpc_run(inst.graph, inst.s, inst.t, prices, config);
    RunResult unweighted = apc_run(inst.graph, inst.s, inst.t, prices, config);
    EXPECT_EQ(action_signature(weighted.trace), action_signature(unweighted.trace));
    expect_prices(weighted.prices, unweighted.prices);
  }
}

TEST(AwpcRun, WarmStartAtExactDistances) {
  std::mt19937 rng(89);
  for (int round = 0; round < 120; ++round) {
    auto inst = random_reachable_graph(rng, 10, 0, 9);
    auto oracle = oracles::bellman_ford_distances(inst.graph, inst.t);
    ASSERT_FALSE(oracle.has_negative_cycle);

    SolverConfig config;
    config.epsilon = 2.0;
    config.trace = true;
    AwpcResult result = awpc_run(inst.graph, inst.s, inst.t, oracle.distances, config);
    EXPECT_EQ(result.contractions, 0);
    EXPECT_DOUBLE_EQ(path_length(inst.graph, result.path), oracle.distances[inst.s]);
    // The case (a) rise adds exactly eps on top of the entry differential.
    EXPECT_DOUBLE_EQ(result.report.price_gap, oracle.distances[inst.s] + config.epsilon);
    // All interior arcs of the final path are level.
    for (std::size_t i = 0; i + 2 < result.path.size(); ++i) {
      const Arc& arc = inst.graph.arc(*inst.graph.find_arc(result.path[i], result.path[i + 1]));
      EXPECT_EQ(classify_arc(arc, result.prices), ArcClass::kLevel);
    }
  }
}

TEST(AwpcRun, PriceGapBoundsPathLengthOnRandomRuns) {
  std::mt19937 rng(97);
  for (int round = 0; round < 120; ++round) {
    auto inst = random_reachable_graph(rng, 10, 0, 9);
    SolverConfig config;
    config.epsilon = (round % 2) ? 0.5 : 3.0;
    PriceVector prices = random_prices(rng, inst.graph.node_count(), 0.0, 8.0);
    AwpcResult result = awpc_run(inst.graph, inst.s, inst.t, prices, config);
    EXPECT_LE(result.report.path_length, result.report.price_gap + 1e-9);
  }
}

TEST(AwpcRun, ReferencePathBoundHoldsForEveryEnumeratedPath) {
  std::mt19937 rng(101);
  for (int round = 0; round < 60; ++round) {
    auto inst = random_reachable_graph(rng, 10, 0, 9);
    SolverConfig config;
    config.epsilon = 1.0;
    AwpcResult result = awpc_run(inst.graph, inst.s, inst.t, {}, config);
    const double run_length = result.report.path_length;
    for (const auto& reference : oracles::enumerate_paths(inst.graph, inst.s, inst.t)) {
      SuboptimalityBound bound = suboptimality_bound(inst.graph, result.report, result.prices,
                                                     result.path, reference.path);
      EXPECT_LE(run_length, bound.tight + 1e-9);
      EXPECT_LE(bound.tight, bound.coarse + 1e-9);
    }
  }
}

TEST(AwpcRun, CsRuleMaintainsEpsilonCsAndItsBound) {
  std::mt19937 rng(103);
  for (int round = 0; round < 120; ++round) {
    auto inst = random_reachable_graph(rng, 10, 0, 9);
    SolverConfig config;
    config.epsilon = (round % 2) ? 0.5 : 2.0;
    config.trace = true;
    AwpcResult result =
        awpc_run(inst.graph, inst.s, inst.t, {}, config, PriceRule::kCsPreserving);

    auto cs = check_trace_epsilon_cs(inst.graph, result.trace, config.epsilon);
    EXPECT_TRUE(cs.ok) << cs.what;
    auto invariants =
        check_trace_invariants(inst.graph, result.trace, /*weighted=*/true, /*cs_rule=*/true);
    EXPECT_TRUE(invariants.ok) << invariants.what;

    auto oracle = oracles::bellman_ford_distances(inst.graph, inst.t);
    const double bound =
        oracle.distances[inst.s] + (inst.graph.node_count() - 1) * config.epsilon;
    EXPECT_LE(result.report.path_length, bound + 1e-9);
  }
}

TEST(AwpcRun, Discrepancies) {
  Graph g = four_node_diamond();
  DiscrepancyReport report = discrepancies(g, {6.0, 5.0, 3.5, 0.0});
  EXPECT_DOUBLE_EQ(report.arc_discrepancy[*g.find_arc(0, 1)], 0.0);
  EXPECT_DOUBLE_EQ(report.arc_discrepancy[*g.find_arc(0, 2)], 0.5);
  EXPECT_DOUBLE_EQ(report.arc_discrepancy[*g.find_arc(1, 3)], 2.0);
  EXPECT_DOUBLE_EQ(report.arc_discrepancy[*g.find_arc(2, 3)], 1.0);
  EXPECT_DOUBLE_EQ(report.max_discrepancy, 2.0);

  DiscrepancyReport zero = discrepancies(g, {0.0, 0.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(zero.max_discrepancy, 0.0);

  // A level arc contributes no discrepancy.
  DiscrepancyReport level = discrepancies(g, {1.0, 0.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(level.arc_discrepancy[*g.find_arc(0, 1)], 0.0);
}

TEST(SuboptimalityBoundOp, DiamondNumbers) {
  Graph g = four_node_diamond();
  PriceVector prices{6.0, 5.0, 3.5, 0.0};
  Path run_path{0, 1, 3};
  DiscrepancyReport report = discrepancies(g, prices, run_path);
  SuboptimalityBound bound = suboptimality_bound(g, report, prices, run_path, {0, 1, 3});
  EXPECT_DOUBLE_EQ(bound.tight, 6.0);   // 4 + (0 + 2)
  EXPECT_DOUBLE_EQ(bound.coarse, 10.0); // 4 + 3 * 2
  EXPECT_LE(report.path_length, bound.tight);

  // The returned path referenced against itself always dominates L_P.
  SuboptimalityBound self_bound =
      suboptimality_bound(g, report, prices, run_path, run_path);
  EXPECT_LE(report.path_length, self_bound.tight);

  // Zero discrepancies certify optimality.
  DiscrepancyReport exact = discrepancies(g, {4.0, 3.0, 2.5, 0.0}, run_path);
  SuboptimalityBound certificate =
      suboptimality_bound(g, exact, {4.0, 3.0, 2.5, 0.0}, run_path, {0, 2, 3});
  EXPECT_DOUBLE_EQ(certificate.tight, 4.5);
  EXPECT_DOUBLE_EQ(certificate.tight, certificate.reference_length);
}

TEST(SuboptimalityBoundOp, UphillRunPathRejected) {
  Graph g = four_node_diamond();
  PriceVector prices{0.0, 5.0, 0.0, 0.0};  // (s,1) is uphill
  DiscrepancyReport report = discrepancies(g, prices, {0, 1, 3});
  try {
    suboptimality_bound(g, report, prices, {0, 1, 3}, {0, 2, 3});
    FAIL() << "expected UphillArcOnPath";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUphillArcOnPath);
  }
}

TEST(CheckEpsilonCs, RepairFixtureViolationsAreExact) {
  auto fixture = testing::acyclic_repair_fixture();
  EXPECT_TRUE(check_epsilon_cs(fixture.graph, fixture.prices, {}, 1.0).ok);

  EcsReport tight = check_epsilon_cs(fixture.graph, fixture.prices, {}, 0.5);
  ASSERT_FALSE(tight.ok);
  std::vector<std::pair<NodeId, NodeId>> got;
  for (const EcsViolation& v : tight.violations) {
    const Arc& arc = fixture.graph.arc(v.arc);
    got.emplace_back(arc.start, arc.end);
    EXPECT_FALSE(v.on_path);
    EXPECT_GT(v.magnitude, 0.0);
  }
  std::sort(got.begin(), got.end());
  std::vector<std::pair<NodeId, NodeId>> expected = fixture.half_cs_violations;
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(got, expected);
}

TEST(CheckEpsilonCs, UphillPathArcReported) {
  Graph g = four_node_diamond();
  PriceVector prices{0.0, 5.0, 0.0, 0.0};
  EcsReport report = check_epsilon_cs(g, prices, {0, 1, 3}, 10.0);
  ASSERT_FALSE(report.ok);
  bool path_violation = false;
  for (const EcsViolation& v : report.violations) path_violation |= v.on_path;
  EXPECT_TRUE(path_violation);
}

TEST(AwpcRun, NegativeCyclePrecheckFires) {
  Graph g = build_graph(4, {{0, 1, 0.0, kInfinity}, {1, 2, -5.0, kInfinity},
                            {2, 1, -5.0, kInfinity}, {2, 3, 100.0, kInfinity}});
  SolverConfig config;
  try {
    awpc_run(g, 0, 3, {}, config);
    FAIL() << "expected NegativeCycle";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNegativeCycle);
  }
}

TEST(AwpcRun, CycleCreatedGuardFiresWhenPrecheckSkipped) {
  Graph g = build_graph(4, {{0, 1, 0.0, kInfinity}, {1, 2, -5.0, kInfinity},
                            {2, 1, -5.0, kInfinity}, {2, 3, 100.0, kInfinity}});
  SolverConfig config;
  config.skip_cycle_check = true;
  try {
    awpc_run(g, 0, 3, {}, config);
    FAIL() << "expected CycleCreated";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCycleCreated);
  }
}

TEST(AwpcRun, CsEntryCheckRejectsBadPrices) {
  Graph g = build_graph(2, {{0, 1, -1.0, kInfinity}});
  SolverConfig config;
  config.epsilon = 0.5;
  try {
    awpc_run(g, 0, 1, {}, config, PriceRule::kCsPreserving);
    FAIL() << "expected EcsViolatedOnEntry";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEcsViolatedOnEntry);
  }
}

TEST(AwpcRun, NegativeLengthsAcceptedUnderNonnegativeCycles) {
  auto chain = chain_with_bypass(4);  // contains a -1 arc, acyclic
  SolverConfig config;
  config.epsilon = 0.25;
  AwpcResult result = awpc_run(chain.graph, chain.s, chain.t, {}, config);
  EXPECT_EQ(result.path.back(), chain.t);
}

}  // namespace
}  // namespace pathauction
