#pragma once

#include <stdexcept>
#include <string>

namespace revspy {

enum class ErrorCode {
  InvalidArgument,
  CapExceeded,
  ParseError,
  IllegalMove,
  OutOfPhase,
  GameOver,
  NoCover,
  LocalGameInfeasible,
  TargetInfeasible,
  CaseSelectionFailed,
  AvoidingVertexNotFound,
  StrategyMismatch,
  NotFound,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool cond, const std::string& message) {
  if (!cond) fail(ErrorCode::InvalidArgument, message);
}

}  // namespace revspy
