#pragma once

#include <stdexcept>
#include <string>

namespace lexitrend {

enum class ErrorCode {
  // configuration
  ConfigError,
  // parse / extraction
  DuplicateOutletId,
  UnknownRegion,
  MalformedPathExpression,
  EmptyConstruct,
  DuplicatePattern,
  PatternTooLong,
  MalformedDocument,
  HeadlineNotFound,
  BodyNotFound,
  SchemaMismatch,
  ParseError,
  // data invariants
  InvariantViolation,
  NegativeCount,
  // insufficient data
  IneligibleAggregate,
  ZeroUnigrams,
  NoEligibleOutlets,
  EmptySeries,
  EmptyInput,
  TooFewPoints,
  InsufficientOverlap,
  ZeroVariance,
  TooFewOutlets,
  MissingYear,
  ZeroBaseline,
  UnknownSeries,
  // environment
  IoError,
};

// Process exit codes; the CLI --help footer documents the same mapping.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitParse = 3,
  kExitInvariant = 4,
  kExitInsufficientData = 5,
};

const char* error_code_name(ErrorCode code);
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }
  int exit_code() const { return exit_code_for(code_); }

 private:
  ErrorCode code_;
};

}  // namespace lexitrend
