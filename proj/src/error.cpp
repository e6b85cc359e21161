#include "pleat/error.hpp"

namespace pleat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParabolicOrIdentity: return "ParabolicOrIdentity";
    case ErrorKind::IdentityInput: return "IdentityInput";
    case ErrorKind::ZeroMultiplier: return "ZeroMultiplier";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::DegenerateCircle: return "DegenerateCircle";
    case ErrorKind::NoIntersectionAtPoint: return "NoIntersectionAtPoint";
    case ErrorKind::ReducibleLocus: return "ReducibleLocus";
    case ErrorKind::DegenerateNormalization: return "DegenerateNormalization";
    case ErrorKind::NonRealTraces: return "NonRealTraces";
    case ErrorKind::NonPlanar: return "NonPlanar";
    case ErrorKind::NotFuchsian: return "NotFuchsian";
    case ErrorKind::NotPiecewiseGeodesic: return "NotPiecewiseGeodesic";
    case ErrorKind::NonCommutingMeridian: return "NonCommutingMeridian";
    case ErrorKind::NoConsistentLift: return "NoConsistentLift";
    case ErrorKind::CoordinateDegeneracy: return "CoordinateDegeneracy";
    case ErrorKind::NewtonDivergence: return "NewtonDivergence";
    case ErrorKind::TargetOutsideImage: return "TargetOutsideImage";
    case ErrorKind::UncertifiedPathPoint: return "UncertifiedPathPoint";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace pleat
