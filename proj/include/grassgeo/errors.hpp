#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grassgeo {

enum class ErrorCode {
  InvalidInput,
  NotHermitian,
  DomainError,
  BranchCut,
  NotPositive,
  NotInLp,
  NotInvertible,
  InvalidTangent,
  OutOfRange,
  InvalidCurve,
  NotFinitePoint,
  OutsideDomain,
  NotInDisk,
  NotEpsUnitary,
  IOError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every precondition failure in the library surfaces as a GeometryError
/// carrying one of the codes above.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw GeometryError(code, what);
}

/// Comparison thresholds. eq_tol is used for algebraic identities and
/// membership tests, geo_tol for results of iterative or geometric routines.
struct Tolerance {
  double eq_tol = 1e-9;
  double geo_tol = 1e-6;

  void validate() const {
    if (!(eq_tol > 0.0) || !(geo_tol > 0.0)) {
      fail(ErrorCode::InvalidInput, "tolerances must be strictly positive");
    }
  }
};

}  // namespace grassgeo
