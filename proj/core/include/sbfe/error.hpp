#pragma once

#include <stdexcept>
#include <string>

namespace sbfe {

enum class ErrorKind {
  SizeExceeded,
  ModeMismatch,
  InvalidStrategy,
  InvalidFormula,
  InvalidInstance,
  NotReadOnceDnf,
  PreconditionViolated,
  ParameterError,
  HypothesisViolated,
  ParseError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every exception thrown by the library. `kind()` lets callers
/// (the CLI in particular) map failures without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define SBFE_DEFINE_ERROR(Name)                                                     \
  class Name : public Error {                                                       \
   public:                                                                          \
    explicit Name(const std::string& what) : Error(ErrorKind::Name, what) {}        \
  };

SBFE_DEFINE_ERROR(SizeExceeded)
SBFE_DEFINE_ERROR(ModeMismatch)
SBFE_DEFINE_ERROR(InvalidStrategy)
SBFE_DEFINE_ERROR(InvalidFormula)
SBFE_DEFINE_ERROR(InvalidInstance)
SBFE_DEFINE_ERROR(NotReadOnceDnf)
SBFE_DEFINE_ERROR(PreconditionViolated)
SBFE_DEFINE_ERROR(ParameterError)
SBFE_DEFINE_ERROR(HypothesisViolated)
SBFE_DEFINE_ERROR(ParseError)

#undef SBFE_DEFINE_ERROR

}  // namespace sbfe
