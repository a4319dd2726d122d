#ifndef PATHAUCTION_ERRORS_HPP
#define PATHAUCTION_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pathauction {

enum class ErrorCode {
  kInvalidArgument,
  kNodeOutOfRange,
  kSelfArc,
  kDuplicateArc,
  kDeadendNode,
  kAlreadyTerminated,
  kUnreachable,
  kIterationLimitExceeded,
  kNegativeCycle,
  kCycleCreated,
  kEcsViolatedOnEntry,
  kCyclicGraph,
  kNotEntryFeasible,
  kCapacityViolated,
  kAmountExceedsResidual,
  kInfeasible,
  kUphillArcOnPath,
  kParseError,
  kTooLarge,
};

const char* error_code_name(ErrorCode code);

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry the 1-based line number of the offending line.
class ParseError : public SolverError {
 public:
  ParseError(int line, const std::string& message)
      : SolverError(ErrorCode::kParseError,
                    "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& message) {
  throw SolverError(code, message);
}

}  // namespace pathauction

#endif  // PATHAUCTION_ERRORS_HPP
