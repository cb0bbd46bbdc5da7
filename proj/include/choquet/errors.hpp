#pragma once

#include <stdexcept>
#include <string>

namespace choquet {

enum class ErrorCode {
  DimensionMismatch,
  UnboundedPolyhedron,
  PointNotInHull,
  DegenerateInput,
  SmoothNormUnsupported,
  NotOnSphere,
  SamePoint,
  NoConstants,
  NoConstantsInHw,
  NotWeaklySimplicial,
  NegativeMeasure,
  BarycenterMismatch,
  NotInNMu,
  NotMaximal,
  MassMismatch,
  InternalCheckFailed,
  InvalidInput,
  UnknownFixture,
  ParseError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Throws InternalCheckFailed; used for postconditions guaranteed by theory.
void check(bool ok, const std::string& what);

}  // namespace choquet
