#include "lexitrend/error.hpp"

namespace lexitrend {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::DuplicateOutletId: return "DuplicateOutletId";
    case ErrorCode::UnknownRegion: return "UnknownRegion";
    case ErrorCode::MalformedPathExpression: return "MalformedPathExpression";
    case ErrorCode::EmptyConstruct: return "EmptyConstruct";
    case ErrorCode::DuplicatePattern: return "DuplicatePattern";
    case ErrorCode::PatternTooLong: return "PatternTooLong";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::HeadlineNotFound: return "HeadlineNotFound";
    case ErrorCode::BodyNotFound: return "BodyNotFound";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::IneligibleAggregate: return "IneligibleAggregate";
    case ErrorCode::ZeroUnigrams: return "ZeroUnigrams";
    case ErrorCode::NoEligibleOutlets: return "NoEligibleOutlets";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::InsufficientOverlap: return "InsufficientOverlap";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::TooFewOutlets: return "TooFewOutlets";
    case ErrorCode::MissingYear: return "MissingYear";
    case ErrorCode::ZeroBaseline: return "ZeroBaseline";
    case ErrorCode::UnknownSeries: return "UnknownSeries";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::IoError:
      return kExitConfig;
    case ErrorCode::DuplicateOutletId:
    case ErrorCode::UnknownRegion:
    case ErrorCode::MalformedPathExpression:
    case ErrorCode::EmptyConstruct:
    case ErrorCode::DuplicatePattern:
    case ErrorCode::PatternTooLong:
    case ErrorCode::MalformedDocument:
    case ErrorCode::HeadlineNotFound:
    case ErrorCode::BodyNotFound:
    case ErrorCode::SchemaMismatch:
    case ErrorCode::ParseError:
      return kExitParse;
    case ErrorCode::InvariantViolation:
    case ErrorCode::NegativeCount:
      return kExitInvariant;
    case ErrorCode::IneligibleAggregate:
    case ErrorCode::ZeroUnigrams:
    case ErrorCode::NoEligibleOutlets:
    case ErrorCode::EmptySeries:
    case ErrorCode::EmptyInput:
    case ErrorCode::TooFewPoints:
    case ErrorCode::InsufficientOverlap:
    case ErrorCode::ZeroVariance:
    case ErrorCode::TooFewOutlets:
    case ErrorCode::MissingYear:
    case ErrorCode::ZeroBaseline:
    case ErrorCode::UnknownSeries:
      return kExitInsufficientData;
  }
  return 1;
}

}  // namespace lexitrend
