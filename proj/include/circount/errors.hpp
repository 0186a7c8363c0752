#pragma once

#include <stdexcept>
#include <string>

namespace circount {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define CIRCOUNT_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                          \
   public:                                                             \
    using Error::Error;                                                \
    const char* kind() const noexcept override { return #Name; }       \
  };

CIRCOUNT_DEFINE_ERROR(DomainError)
CIRCOUNT_DEFINE_ERROR(RankError)
CIRCOUNT_DEFINE_ERROR(ZeroPolynomial)
CIRCOUNT_DEFINE_ERROR(NotIsolating)
CIRCOUNT_DEFINE_ERROR(DegreeTooSmall)
CIRCOUNT_DEFINE_ERROR(SingularExponents)
CIRCOUNT_DEFINE_ERROR(HyperplaneSupport)
CIRCOUNT_DEFINE_ERROR(NotACriticalPoint)
CIRCOUNT_DEFINE_ERROR(NotAPole)
CIRCOUNT_DEFINE_ERROR(BudgetExceeded)
CIRCOUNT_DEFINE_ERROR(ParseError)
CIRCOUNT_DEFINE_ERROR(ValidationError)
CIRCOUNT_DEFINE_ERROR(InternalError)

#undef CIRCOUNT_DEFINE_ERROR

}  // namespace circount
