#include "pathauction/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"

namespace pathauction {
namespace {

using oracles::bellman_ford_distances;
using oracles::enumerate_paths;
using oracles::oracle_max_flow;
using oracles::oracle_min_cost_flow;
using testing::four_node_diamond;
using testing::random_flow_problem;
using testing::random_reachable_graph;
using testing::three_by_three_matching;
using testing::three_by_three_partial_flow;

TEST(BellmanFord, DiamondDistances) {
  auto result = bellman_ford_distances(four_node_diamond(), 3);
  ASSERT_FALSE(result.has_negative_cycle);
  EXPECT_DOUBLE_EQ(result.distances[0], 4.0);
  EXPECT_DOUBLE_EQ(result.distances[1], 3.0);
  EXPECT_DOUBLE_EQ(result.distances[2], 2.5);
  EXPECT_DOUBLE_EQ(result.distances[3], 0.0);
}

TEST(BellmanFord, SingleArc) {
  Graph g = build_graph(2, {{0, 1, 7.0, kInfinity}});
  auto result = bellman_ford_distances(g, 1);
  EXPECT_DOUBLE_EQ(result.distances[0], 7.0);
}

TEST(BellmanFord, NegativeCycleReported) {
  Graph g = build_graph(3, {{0, 1, 1.0, kInfinity}, {1, 0, -2.0, kInfinity},
                            {1, 2, 0.0, kInfinity}});
  auto result = bellman_ford_distances(g, 2);
  EXPECT_TRUE(result.has_negative_cycle);
  ASSERT_GE(result.cycle.size(), 3u);
  EXPECT_EQ(result.cycle.front(), result.cycle.back());
}

TEST(BellmanFord, UnreachableNodesAreInfinite) {
  Graph g = build_graph(3, {{0, 1, 1.0, kInfinity}});
  auto result = bellman_ford_distances(g, 1);
  EXPECT_TRUE(std::isinf(result.distances[2]));
}

TEST(BellmanFord, SatisfiesBellmanFixedPoint) {
  std::mt19937 rng(31);
  for (int round = 0; round < 100; ++round) {
    auto inst = random_reachable_graph(rng, 10, 0, 9);
    auto result = bellman_ford_distances(inst.graph, inst.t);
    ASSERT_FALSE(result.has_negative_cycle);
    for (NodeId v = 0; v < inst.graph.node_count(); ++v) {
      if (v == inst.t || std::isinf(result.distances[v])) continue;
      double best = kInfinity;
      for (ArcId id : inst.graph.out_arcs(v)) {
        const Arc& arc = inst.graph.arc(id);
        best = std::min(best, arc.length + result.distances[arc.end]);
      }
      EXPECT_NEAR(result.distances[v], best, 1e-9);
    }
  }
}

TEST(EnumeratePaths, Diamond) {
  auto paths = enumerate_paths(four_node_diamond(), 0, 3);
  ASSERT_EQ(paths.size(), 2u);
  std::sort(paths.begin(), paths.end(),
            [](const auto& a, const auto& b) { return a.length < b.length; });
  EXPECT_EQ(paths[0].path, (Path{0, 1, 3}));
  EXPECT_DOUBLE_EQ(paths[0].length, 4.0);
  EXPECT_EQ(paths[1].path, (Path{0, 2, 3}));
  EXPECT_DOUBLE_EQ(paths[1].length, 4.5);
}

TEST(EnumeratePaths, ReducedMatchingHasExactlyThreeCompletions) {
  MatchingFlow m = three_by_three_matching();
  ResidualGraph res = residual_graph(m.problem.graph, three_by_three_partial_flow(m));
  auto paths = enumerate_paths(res.graph, m.source(), m.sink());
  std::vector<Path> got;
  for (const auto& p : paths) got.push_back(p.path);
  std::sort(got.begin(), got.end());
  std::vector<Path> expected = testing::three_by_three_completions(m);
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(got, expected);
}

TEST(EnumeratePaths, UnreachableGivesEmpty) {
  Graph g = build_graph(3, {{0, 1, 1.0, kInfinity}});
  EXPECT_TRUE(enumerate_paths(g, 0, 2).empty());
}

TEST(EnumeratePaths, TooLargeRejected) {
  std::vector<Arc> arcs;
  for (NodeId v = 0; v < 13; ++v) {
    if (v + 1 < 13) arcs.push_back({v, v + 1, 1.0, kInfinity});
  }
  Graph g = build_graph(13, arcs);
  try {
    enumerate_paths(g, 0, 12);
    FAIL() << "expected TooLarge";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(OracleMaxFlow, MatchingFixtureIsPerfect) {
  MatchingFlow m = three_by_three_matching();
  EXPECT_DOUBLE_EQ(oracle_max_flow(m.problem).value, 3.0);
}

TEST(OracleMaxFlow, SingleArcAndDisconnected) {
  FlowProblem single(build_graph(2, {{0, 1, 0.0, 5.0}}), 0, 1, 3.0);
  EXPECT_DOUBLE_EQ(oracle_max_flow(single).value, 5.0);
  FlowProblem split(build_graph(3, {{0, 1, 0.0, 5.0}}), 0, 2, 1.0);
  EXPECT_DOUBLE_EQ(oracle_max_flow(split).value, 0.0);
}

TEST(OracleMinCostFlow, ParallelRoutes) {
  Graph g = build_graph(4, {{0, 1, 1.0, 1.0},
                            {1, 3, 0.0, 1.0},
                            {0, 2, 3.0, 1.0},
                            {2, 3, 0.0, 1.0}});
  FlowProblem both(g, 0, 3, 2.0);
  EXPECT_DOUBLE_EQ(oracle_min_cost_flow(both).cost, 4.0);
  FlowProblem one(g, 0, 3, 1.0);
  EXPECT_DOUBLE_EQ(oracle_min_cost_flow(one).cost, 1.0);
}

TEST(OracleMinCostFlow, InfeasibleSupply) {
  FlowProblem problem(build_graph(2, {{0, 1, 0.0, 5.0}}), 0, 1, 7.0);
  try {
    oracle_min_cost_flow(problem);
    FAIL() << "expected Infeasible";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

// Brute force over all integer flow vectors; the oracle of the oracle.
double brute_force_min_cost(const FlowProblem& problem) {
  const Graph& g = problem.graph;
  const int m = g.arc_count();
  std::vector<int> x(m, 0);
  double best = kInfinity;
  auto feasible = [&]() {
    std::vector<double> div(g.node_count(), 0.0);
    for (ArcId id = 0; id < m; ++id) {
      div[g.arc(id).start] += x[id];
      div[g.arc(id).end] -= x[id];
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (v == problem.source || v == problem.sink) continue;
      if (div[v] != 0.0) return false;
    }
    return div[problem.source] == problem.supply;
  };
  auto search = [&](auto&& self, int arc) -> void {
    if (arc == m) {
      if (feasible()) {
        double cost = 0.0;
        for (ArcId id = 0; id < m; ++id) cost += x[id] * g.arc(id).length;
        best = std::min(best, cost);
      }
      return;
    }
    const int cap = static_cast<int>(
        std::min(g.arc(arc).capacity, problem.supply));
    for (int units = 0; units <= cap; ++units) {
      x[arc] = units;
      self(self, arc + 1);
    }
    x[arc] = 0;
  };
  search(search, 0);
  return best;
}

TEST(OracleMinCostFlow, AgreesWithBruteForceOnTinyInstances) {
  std::mt19937 rng(47);
  int checked = 0;
  while (checked < 40) {
    FlowProblem problem = random_flow_problem(rng, 5, 3, 5, 2.0);
    if (problem.graph.arc_count() > 6) continue;
    const double brute = brute_force_min_cost(problem);
    if (std::isinf(brute)) {
      EXPECT_THROW(oracle_min_cost_flow(problem), SolverError);
    } else {
      EXPECT_NEAR(oracle_min_cost_flow(problem).cost, brute, 1e-9);
    }
    ++checked;
  }
}

TEST(OracleMinCostFlow, AssignmentAgreesWithPermutationBruteForce) {
  std::mt19937 rng(53);
  std::uniform_int_distribution<int> cost(0, 9);
  for (int round = 0; round < 50; ++round) {
    double costs[3][3];
    std::vector<std::pair<int, int>> pairs;
    std::vector<double> pair_costs;
    for (int p = 0; p < 3; ++p) {
      for (int o = 0; o < 3; ++o) {
        costs[p][o] = cost(rng);
        pairs.emplace_back(p, o);
        pair_costs.push_back(costs[p][o]);
      }
    }
    MatchingFlow m = matching_to_flow(3, 3, pairs, pair_costs);
    const double solved = oracle_min_cost_flow(m.problem).cost;

    double best = kInfinity;
    int perm[3] = {0, 1, 2};
    std::sort(perm, perm + 3);
    do {
      best = std::min(best, costs[0][perm[0]] + costs[1][perm[1]] + costs[2][perm[2]]);
    } while (std::next_permutation(perm, perm + 3));
    EXPECT_NEAR(solved, best, 1e-9);
  }
}

}  // namespace
}  // namespace pathauction
