#include "gmra/errors.hpp"

namespace gmra {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonExpansive: return "NonExpansive";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DepthOverflow: return "DepthOverflow";
    case ErrorCode::OverlappingPieces: return "OverlappingPieces";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::ConsistencyViolated: return "ConsistencyViolated";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::LowPassViolation: return "LowPassViolation";
    case ErrorCode::LipschitzSuspect: return "LipschitzSuspect";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CompletionFailed: return "CompletionFailed";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::BoxTooSmall: return "BoxTooSmall";
    case ErrorCode::InitialConditionViolated: return "InitialConditionViolated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

}  // namespace gmra
