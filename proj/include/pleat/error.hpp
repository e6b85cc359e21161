#pragma once

#include <stdexcept>
#include <string>

namespace pleat {

enum class ErrorKind {
  ParabolicOrIdentity,
  IdentityInput,
  ZeroMultiplier,
  CoincidentPoints,
  DegenerateCircle,
  NoIntersectionAtPoint,
  ReducibleLocus,
  DegenerateNormalization,
  NonRealTraces,
  NonPlanar,
  NotFuchsian,
  NotPiecewiseGeodesic,
  NonCommutingMeridian,
  NoConsistentLift,
  CoordinateDegeneracy,
  NewtonDivergence,
  TargetOutsideImage,
  UncertifiedPathPoint,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pleat
