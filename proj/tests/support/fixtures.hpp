#ifndef PATHAUCTION_TESTS_FIXTURES_HPP
#define PATHAUCTION_TESTS_FIXTURES_HPP

#include <utility>
#include <vector>

#include "pathauction/graph.hpp"
#include "pathauction/transport.hpp"

namespace pathauction::testing {

// Four-node diamond: two s->t routes of lengths 4 and 4.5. The shortest path
// is (s,1,t). Node ids: s=0, 1, 2, t=3.
inline Graph four_node_diamond() {
  return build_graph(4, {
                            {0, 1, 1.0, kInfinity},
                            {0, 2, 2.0, kInfinity},
                            {1, 3, 3.0, kInfinity},
                            {2, 3, 2.5, kInfinity},
                        });
}
inline constexpr NodeId kDiamondS = 0;
inline constexpr NodeId kDiamondT = 3;

// Zero-length cycle 1->2->3->1 hanging off the only s->t route, with one
// expensive exit arc (2,t) of length L. Node ids: s=0, 1, 2, 3, t=4.
inline Graph cycle_trap_graph(double exit_length) {
  return build_graph(5, {
                            {0, 1, 0.0, kInfinity},
                            {1, 2, 0.0, kInfinity},
                            {2, 3, 0.0, kInfinity},
                            {3, 1, 0.0, kInfinity},
                            {2, 4, exit_length, kInfinity},
                        });
}
inline constexpr NodeId kCycleTrapS = 0;
inline constexpr NodeId kCycleTrapT = 4;

// Chain s->1->...->n->t of unit arcs with a zero-length bypass (s,b,t):
// arc (s,b) costs 1, (b,t) costs -1, and a decoy (1,b) costs n. The shortest
// path is (s,b,t) with length 0; the chain costs n+1.
struct ChainGraph {
  Graph graph;
  NodeId s = 0;
  NodeId bypass;
  NodeId t;
  int chain_length;
};

inline ChainGraph chain_with_bypass(int n) {
  const NodeId bypass = n + 1;
  const NodeId t = n + 2;
  std::vector<Arc> arcs;
  arcs.push_back({0, 1, 1.0, kInfinity});
  for (NodeId i = 1; i < n; ++i) arcs.push_back({i, i + 1, 1.0, kInfinity});
  arcs.push_back({n, t, 1.0, kInfinity});
  arcs.push_back({0, bypass, 1.0, kInfinity});
  arcs.push_back({1, bypass, static_cast<double>(n), kInfinity});
  arcs.push_back({bypass, t, -1.0, kInfinity});
  return ChainGraph{build_graph(n + 3, arcs), 0, bypass, t, n};
}

// 3x3 matching converted to a flow problem. The allowed pairs are chosen so
// that after assigning person 0 to object 1 and person 1 to object 2, the
// reduced graph admits exactly three completing paths.
inline MatchingFlow three_by_three_matching() {
  return matching_to_flow(3, 3,
                          {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}});
}

// Flow after the first two assignments (person 0 -> object 1, person 1 ->
// object 2) of the 3x3 fixture.
inline std::vector<double> three_by_three_partial_flow(const MatchingFlow& m) {
  std::vector<double> flow(m.problem.graph.arc_count(), 0.0);
  auto set_unit = [&](NodeId a, NodeId b) {
    flow[*m.problem.graph.find_arc(a, b)] = 1.0;
  };
  set_unit(m.source(), m.person_node(0));
  set_unit(m.person_node(0), m.object_node(1));
  set_unit(m.object_node(1), m.sink());
  set_unit(m.source(), m.person_node(1));
  set_unit(m.person_node(1), m.object_node(2));
  set_unit(m.object_node(2), m.sink());
  return flow;
}

// The three completing paths of the reduced 3x3 fixture.
inline std::vector<Path> three_by_three_completions(const MatchingFlow& m) {
  const NodeId s = m.source(), t = m.sink();
  const NodeId p1 = m.person_node(0), p2 = m.person_node(1), p3 = m.person_node(2);
  const NodeId o1 = m.object_node(0), o2 = m.object_node(1), o3 = m.object_node(2);
  return {
      {s, p3, o3, p2, o1, t},
      {s, p3, o3, p2, o2, p1, o1, t},
      {s, p3, o2, p1, o1, t},
  };
}

// Acyclic graph with unit lengths and prices that satisfy 1-CS everywhere
// while exactly four arcs violate 0.5-CS: (1,4), (3,6), (3,7) and (7,t).
// Node labels: s=0, 1, 3, 4, 6, 7, 8 mapped densely, t last.
struct RepairFixture {
  Graph graph;
  PriceVector prices;
  NodeId n1, n3, n4, n6, n7, n8, t;
  std::vector<std::pair<NodeId, NodeId>> half_cs_violations;
};

inline RepairFixture acyclic_repair_fixture() {
  RepairFixture f{
      build_graph(8,
                  {
                      {0, 1, 1.0, kInfinity},  // s -> 1
                      {0, 2, 1.0, kInfinity},  // s -> 3
                      {1, 3, 1.0, kInfinity},  // 1 -> 4
                      {2, 4, 1.0, kInfinity},  // 3 -> 6
                      {2, 5, 1.0, kInfinity},  // 3 -> 7
                      {3, 5, 1.0, kInfinity},  // 4 -> 7
                      {3, 6, 1.0, kInfinity},  // 4 -> 8
                      {4, 7, 1.0, kInfinity},  // 6 -> t
                      {5, 7, 1.0, kInfinity},  // 7 -> t
                      {6, 7, 1.0, kInfinity},  // 8 -> t
                  }),
      {3.5, 3.0, 3.2, 1.0, 1.2, 1.5, 0.3, -0.3},
      1, 2, 3, 4, 5, 6, 7,
      {},
  };
  f.half_cs_violations = {{f.n1, f.n4}, {f.n3, f.n6}, {f.n3, f.n7}, {f.n7, f.t}};
  return f;
}

}  // namespace pathauction::testing

#endif  // PATHAUCTION_TESTS_FIXTURES_HPP
