#ifndef PATHAUCTION_TRACE_HPP
#define PATHAUCTION_TRACE_HPP

#include <cstdint>
#include <vector>

#include "pathauction/graph.hpp"

namespace pathauction {

enum class StepCase : char {
  kA = 'a',    // degenerate path (s)
  kB = 'b',    // deadend terminal
  kC1 = '1',   // extension branch
  kC2 = '2',   // contraction branch
  kNone = '-'  // terminate record
};

enum class ActionKind { kExtension, kContraction, kTerminate };

struct TraceRecord {
  std::int64_t iteration = 0;  // 1-based
  StepCase step_case = StepCase::kNone;
  ActionKind action = ActionKind::kTerminate;
  NodeId node = -1;  // extension target / contraction destination
  Path path_prior;
  PriceVector prices_prior;
};

using Trace = std::vector<TraceRecord>;

const char* step_case_label(StepCase c);   // "a", "b", "c1", "c2", "-"
const char* action_kind_label(ActionKind a);

}  // namespace pathauction

#endif  // PATHAUCTION_TRACE_HPP
