#include "picentlab/error.hpp"

namespace picent {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidAction: return "InvalidAction";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::IncompatibleGalois: return "IncompatibleGalois";
    case ErrorCode::DegenerateEigenspaces: return "DegenerateEigenspaces";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::NoProjection: return "NoProjection";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::BadFamily: return "BadFamily";
    case ErrorCode::InjectivityFailure: return "InjectivityFailure";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotIndecomposable: return "NotIndecomposable";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::MissingTable: return "MissingTable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
  }
  return "Unknown";
}

}  // namespace picent
