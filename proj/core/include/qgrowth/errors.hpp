#pragma once

#include <stdexcept>
#include <string>

namespace qgrowth {

// Process exit codes used by the CLI.  Library errors carry the code they
// map to so the tool layer never has to re-classify exceptions.
enum class ExitCode : int {
  Ok = 0,
  ParseUsage = 1,
  Validation = 2,
  Limit = 3,
  CheckFailed = 4,
};

class Error : public std::runtime_error {
 public:
  Error(std::string what, ExitCode code)
      : std::runtime_error(std::move(what)), code_(code) {}
  ExitCode exit_code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

#define QGROWTH_DEFINE_ERROR(NAME, CODE)                      \
  class NAME : public Error {                                 \
   public:                                                    \
    explicit NAME(const std::string& what)                    \
        : Error(#NAME ": " + what, ExitCode::CODE) {}         \
  }

// Resource caps.  Callers may retry along a symbolic path or raise the cap.
QGROWTH_DEFINE_ERROR(LimitExceeded, Limit);

// Argument / state validation.
QGROWTH_DEFINE_ERROR(DegreeMismatch, Validation);
QGROWTH_DEFINE_ERROR(NotACongruence, Validation);
QGROWTH_DEFINE_ERROR(OutOfRange, Validation);
QGROWTH_DEFINE_ERROR(SpecInvalid, Validation);
QGROWTH_DEFINE_ERROR(FiberMismatch, Validation);
QGROWTH_DEFINE_ERROR(KindMismatch, Validation);
QGROWTH_DEFINE_ERROR(EmptyCoefficients, Validation);
QGROWTH_DEFINE_ERROR(NonIntegerAverage, Validation);
QGROWTH_DEFINE_ERROR(UnsupportedConversion, Validation);
QGROWTH_DEFINE_ERROR(AllZeroTail, Validation);
QGROWTH_DEFINE_ERROR(NotTruncatable, Validation);
QGROWTH_DEFINE_ERROR(InvalidCover, Validation);
QGROWTH_DEFINE_ERROR(InconsistentDescent, Validation);
QGROWTH_DEFINE_ERROR(NotNormalizing, Validation);
QGROWTH_DEFINE_ERROR(ValidationError, Validation);

// Input text that does not lex/parse.
QGROWTH_DEFINE_ERROR(ParseError, ParseUsage);

#undef QGROWTH_DEFINE_ERROR

}  // namespace qgrowth
