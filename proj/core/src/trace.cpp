#include "pathauction/trace.hpp"

namespace pathauction {

const char* step_case_label(StepCase c) {
  switch (c) {
    case StepCase::kA: return "a";
    case StepCase::kB: return "b";
    case StepCase::kC1: return "c1";
    case StepCase::kC2: return "c2";
    case StepCase::kNone: return "-";
  }
  return "?";
}

const char* action_kind_label(ActionKind a) {
  switch (a) {
    case ActionKind::kExtension: return "extension";
    case ActionKind::kContraction: return "contraction";
    case ActionKind::kTerminate: return "terminate";
  }
  return "?";
}

}  // namespace pathauction
