#include "cyclelsi/error.hpp"

namespace cyclelsi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::UnsupportedN: return "UnsupportedN";
    case ErrorCode::NotHighFrequency: return "NotHighFrequency";
    case ErrorCode::NotInV1: return "NotInV1";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NegativeEntries: return "NegativeEntries";
    case ErrorCode::DegenerateEntropy: return "DegenerateEntropy";
    case ErrorCode::UnsupportedFactor: return "UnsupportedFactor";
    case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::InadmissibleQuery: return "InadmissibleQuery";
    case ErrorCode::NegativePerturbation: return "NegativePerturbation";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace cyclelsi
