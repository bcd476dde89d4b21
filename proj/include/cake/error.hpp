#pragma once

#include <stdexcept>
#include <string>

namespace cake {

enum class ErrorCode {
  ZeroMass,
  InvalidPiece,
  TargetUnreachable,
  DimensionMismatch,
  EmptySubset,
  Infeasible,
  NotWellBehaved,
  NotReduced,
  ArityMismatch,
  UnsupportedValuationClass,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace cake
