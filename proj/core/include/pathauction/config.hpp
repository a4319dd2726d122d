#ifndef PATHAUCTION_CONFIG_HPP
#define PATHAUCTION_CONFIG_HPP

#include <cstdint>

namespace pathauction {

enum class TieBreak {
  kMinId,  // smallest node id among tied argmin candidates
};

enum class PriceRule {
  kStandard,      // extension sets p_nk = p_pred - a_pred
  kCsPreserving,  // extension caps the rise so epsilon-CS is maintained
};

struct SolverConfig {
  double epsilon = 1.0;
  TieBreak tie_break = TieBreak::kMinId;
  // 0 selects the default safety valve of 50 * N * (N + M) steps.
  std::int64_t iteration_limit = 0;
  double tolerance = 0.0;
  bool trace = false;
  // Skip the nonnegative-cycle precheck in awpc_run (it is O(N*M)).
  bool skip_cycle_check = false;
};

struct ScalingSchedule {
  double eps0 = 1.0;
  double theta = 0.25;  // reduction factor per phase, in (0, 1)
  double eps_min = 1.0;

  void validate() const;
};

}  // namespace pathauction

#endif  // PATHAUCTION_CONFIG_HPP
