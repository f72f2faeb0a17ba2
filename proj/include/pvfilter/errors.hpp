#pragma once

#include <stdexcept>
#include <string>

namespace pvfilter {

/// Base class of every error raised by the library. Precondition
/// violations, numerical guards and oracle mismatches all derive from it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PVFILTER_DEFINE_ERROR(Name)                  \
  class Name : public Error {                        \
   public:                                           \
    explicit Name(const std::string& what)           \
        : Error(std::string(#Name ": ") + what) {}   \
  }

PVFILTER_DEFINE_ERROR(InvalidLadder);
PVFILTER_DEFINE_ERROR(DegenerateLadder);
PVFILTER_DEFINE_ERROR(PoleProximity);
PVFILTER_DEFINE_ERROR(IndexOrder);
PVFILTER_DEFINE_ERROR(IndexOutOfRange);
PVFILTER_DEFINE_ERROR(InvalidArgument);
PVFILTER_DEFINE_ERROR(QuadratureFailure);
PVFILTER_DEFINE_ERROR(StepTooLarge);
PVFILTER_DEFINE_ERROR(OracleMismatch);
PVFILTER_DEFINE_ERROR(NonScalarCommutator);
PVFILTER_DEFINE_ERROR(DimensionMismatch);
PVFILTER_DEFINE_ERROR(TauZeroUndefined);
PVFILTER_DEFINE_ERROR(NoFermionLines);
PVFILTER_DEFINE_ERROR(ConfigError);

#undef PVFILTER_DEFINE_ERROR

}  // namespace pvfilter
