#pragma once

#include <stdexcept>
#include <string>

namespace urep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define UREP_DEFINE_ERROR(Name) \
  class Name : public Error {   \
   public:                      \
    using Error::Error;         \
  }

UREP_DEFINE_ERROR(DimensionMismatch);
UREP_DEFINE_ERROR(InvalidArgument);
UREP_DEFINE_ERROR(PointNotInSet);
UREP_DEFINE_ERROR(DegenerateProjection);
UREP_DEFINE_ERROR(SamplingExhausted);
UREP_DEFINE_ERROR(InnerSolveFailed);
UREP_DEFINE_ERROR(SubproblemFailed);
UREP_DEFINE_ERROR(MissingGradient);
UREP_DEFINE_ERROR(InfeasibleSegment);
UREP_DEFINE_ERROR(EmptyTrace);
UREP_DEFINE_ERROR(GridTooLarge);
UREP_DEFINE_ERROR(EmptyGrid);
UREP_DEFINE_ERROR(NonFiniteValue);

#undef UREP_DEFINE_ERROR

}  // namespace urep
