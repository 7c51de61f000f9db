#pragma once

#include <stdexcept>
#include <string>

namespace conedet {

// Error taxonomy shared by all modules. Codes carry the contract violation,
// the message carries the specifics.
enum class ErrorCode {
  // surface / mesh
  LengthMismatch,
  DanglingEdge,
  NonOrientable,
  DegenerateTriangle,
  MinAngleViolation,
  CutOverlap,
  CutOutsideParallelogram,
  InvalidDocument,
  // cone kernel
  NonpositiveTime,
  NonpositiveAngle,
  BoundaryPole,
  TimeTooLarge,
  // spectral
  DensityNotIntegrable,
  QuadratureFailure,
  SolverBreakdown,
  TruncationUncertified,
  InconsistentCoefficients,
  GaussBonnetViolation,
  // special functions / metrics
  LowerHalfPlane,
  EvaluationAtConePoint,
  DivisorsIntersect,
  IndexOutOfRange,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) raise(code, what);
}

}  // namespace conedet
