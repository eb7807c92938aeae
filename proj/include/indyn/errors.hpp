#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace indyn {

enum class ErrorCode {
  // Scenario validation.
  InvalidScenario,
  UnpairedComplexParameter,
  DegenerateMomenta,
  NonPositiveRealMomentum,
  EmptyTimeGrid,
  CoincidentPositions,
  // Tracking and event localization.
  InconsistentSnapshotSize,
  NoCountChange,
  MultipleTransitions,
  // Engines.
  EigenSolverFailure,
  ZeroMomentumDifference,
  ZeroTime,
  NonRealDeterminant,
  RootCountMismatch,
  DomainError,
  // Verification.
  GridTooShort,
  ParticleCoincidence,
  RsPoleProximity,
  CollisionApproach,
  StepUnderflow,
  // Input/output.
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Broad failure class, used by the CLI to pick an exit code.
enum class ErrorCategory { Input, Numerical };
ErrorCategory category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace indyn
