#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace condtree {

enum class ErrorCode {
  InvalidPreorder,
  InvalidContour,
  VertexNotInTree,
  SingletonTree,
  EmptyVertex,
  RootNotAllowed,
  RootAboveLevel,
  InvalidDistribution,
  SizeOverflow,
  UnreachableSize,
  RejectionBudgetExhausted,
  IrrationalMass,
  NotWellLabelled,
  NotAQuadrangulation,
  LengthMismatch,
  EmptySample,
  NonUniqueMinimum,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` tells the failure apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace condtree
