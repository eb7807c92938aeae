#include "indyn/errors.hpp"

namespace indyn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::UnpairedComplexParameter: return "UnpairedComplexParameter";
    case ErrorCode::DegenerateMomenta: return "DegenerateMomenta";
    case ErrorCode::NonPositiveRealMomentum: return "NonPositiveRealMomentum";
    case ErrorCode::EmptyTimeGrid: return "EmptyTimeGrid";
    case ErrorCode::CoincidentPositions: return "CoincidentPositions";
    case ErrorCode::InconsistentSnapshotSize: return "InconsistentSnapshotSize";
    case ErrorCode::NoCountChange: return "NoCountChange";
    case ErrorCode::MultipleTransitions: return "MultipleTransitions";
    case ErrorCode::EigenSolverFailure: return "EigenSolverFailure";
    case ErrorCode::ZeroMomentumDifference: return "ZeroMomentumDifference";
    case ErrorCode::ZeroTime: return "ZeroTime";
    case ErrorCode::NonRealDeterminant: return "NonRealDeterminant";
    case ErrorCode::RootCountMismatch: return "RootCountMismatch";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::GridTooShort: return "GridTooShort";
    case ErrorCode::ParticleCoincidence: return "ParticleCoincidence";
    case ErrorCode::RsPoleProximity: return "RsPoleProximity";
    case ErrorCode::CollisionApproach: return "CollisionApproach";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::EigenSolverFailure:
    case ErrorCode::NonRealDeterminant:
    case ErrorCode::RootCountMismatch:
    case ErrorCode::StepUnderflow:
    case ErrorCode::CollisionApproach:
    case ErrorCode::MultipleTransitions:
    case ErrorCode::NoCountChange:
    case ErrorCode::InconsistentSnapshotSize:
    case ErrorCode::DomainError:
    case ErrorCode::ParticleCoincidence:
    case ErrorCode::RsPoleProximity:
    case ErrorCode::ZeroTime:
    case ErrorCode::ZeroMomentumDifference:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Input;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace indyn
