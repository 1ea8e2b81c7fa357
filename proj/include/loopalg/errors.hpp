#pragma once

#include <stdexcept>
#include <string>

namespace loopalg {

/// Base for every error raised by the library. `kind()` is the stable name
/// used in CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define LOOPALG_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(#Name, what) {}      \
  };

LOOPALG_DEFINE_ERROR(UnsupportedType)
LOOPALG_DEFINE_ERROR(UnsupportedTwisted)
LOOPALG_DEFINE_ERROR(WindowUnderflow)
LOOPALG_DEFINE_ERROR(InvalidCoordinates)
LOOPALG_DEFINE_ERROR(MismatchError)
LOOPALG_DEFINE_ERROR(ContainmentViolation)
LOOPALG_DEFINE_ERROR(SurjectivityFailure)
LOOPALG_DEFINE_ERROR(DiagramMismatch)
LOOPALG_DEFINE_ERROR(NotOperShape)
LOOPALG_DEFINE_ERROR(NoCertificate)
LOOPALG_DEFINE_ERROR(CyclicFailure)
LOOPALG_DEFINE_ERROR(PreconditionError)

#undef LOOPALG_DEFINE_ERROR

}  // namespace loopalg
