#pragma once

#include <stdexcept>
#include <string>

namespace numberless {

// Base of every error raised by the library. Callers that only care about
// "bad input" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NUMBERLESS_DEFINE_ERROR(Name)          \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  }

NUMBERLESS_DEFINE_ERROR(NotADistribution);
NUMBERLESS_DEFINE_ERROR(UnknownLetter);
NUMBERLESS_DEFINE_ERROR(UnknownState);
NUMBERLESS_DEFINE_ERROR(IncompleteAutomaton);
NUMBERLESS_DEFINE_ERROR(InconsistentSupport);
NUMBERLESS_DEFINE_ERROR(DuplicateName);
NUMBERLESS_DEFINE_ERROR(NotSimple);
NUMBERLESS_DEFINE_ERROR(DomainError);
NUMBERLESS_DEFINE_ERROR(OrderMismatch);
NUMBERLESS_DEFINE_ERROR(AlphabetClash);
NUMBERLESS_DEFINE_ERROR(BudgetExceeded);
NUMBERLESS_DEFINE_ERROR(EmptyCycle);
NUMBERLESS_DEFINE_ERROR(PreconditionFailed);
NUMBERLESS_DEFINE_ERROR(ParseError);
NUMBERLESS_DEFINE_ERROR(ValidationError);

#undef NUMBERLESS_DEFINE_ERROR

}  // namespace numberless
