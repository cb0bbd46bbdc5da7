#include "choquet/errors.hpp"

namespace choquet {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnboundedPolyhedron: return "UnboundedPolyhedron";
    case ErrorCode::PointNotInHull: return "PointNotInHull";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::SmoothNormUnsupported: return "SmoothNormUnsupported";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::SamePoint: return "SamePoint";
    case ErrorCode::NoConstants: return "NoConstants";
    case ErrorCode::NoConstantsInHw: return "NoConstantsInHw";
    case ErrorCode::NotWeaklySimplicial: return "NotWeaklySimplicial";
    case ErrorCode::NegativeMeasure: return "NegativeMeasure";
    case ErrorCode::BarycenterMismatch: return "BarycenterMismatch";
    case ErrorCode::NotInNMu: return "NotInNMu";
    case ErrorCode::NotMaximal: return "NotMaximal";
    case ErrorCode::MassMismatch: return "MassMismatch";
    case ErrorCode::InternalCheckFailed: return "InternalCheckFailed";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

void check(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InternalCheckFailed, what);
}

}  // namespace choquet
