#include "conedet/errors.hpp"

namespace conedet {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::NonOrientable: return "NonOrientable";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::MinAngleViolation: return "MinAngleViolation";
    case ErrorCode::CutOverlap: return "CutOverlap";
    case ErrorCode::CutOutsideParallelogram: return "CutOutsideParallelogram";
    case ErrorCode::InvalidDocument: return "InvalidDocument";
    case ErrorCode::NonpositiveTime: return "NonpositiveTime";
    case ErrorCode::NonpositiveAngle: return "NonpositiveAngle";
    case ErrorCode::BoundaryPole: return "BoundaryPole";
    case ErrorCode::TimeTooLarge: return "TimeTooLarge";
    case ErrorCode::DensityNotIntegrable: return "DensityNotIntegrable";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::SolverBreakdown: return "SolverBreakdown";
    case ErrorCode::TruncationUncertified: return "TruncationUncertified";
    case ErrorCode::InconsistentCoefficients: return "InconsistentCoefficients";
    case ErrorCode::GaussBonnetViolation: return "GaussBonnetViolation";
    case ErrorCode::LowerHalfPlane: return "LowerHalfPlane";
    case ErrorCode::EvaluationAtConePoint: return "EvaluationAtConePoint";
    case ErrorCode::DivisorsIntersect: return "DivisorsIntersect";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace conedet
